//! Covered (complement of uncoverable) sets, purity sets, the candidate
//! space they cut out, and the coding-clique conditions:
//!
//! 1. `0 ∈ C`;
//! 2. `s·c = 0` for every purity vector `s` and every `c ∈ C`;
//! 3. `c_i − c_j` is uncoverable for every distinct pair.
//!
//! Two-subsystem (tensor) cliques are handled by concatenation over a
//! disjoint-union graph with paired channels, so one code path serves
//! standard, entanglement-assisted and half-noisy codes alike.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph_state::{reduce_unchecked, PauliError, WeightedGraph};
use crate::noise::ChannelLayout;
use crate::zp::{Modulus, ZVec};

/// `{t − s·Γ}` over admissible errors of weight in `(0, d)`, each with the
/// first error (in enumeration order) that produces it.
#[derive(Debug, Clone)]
pub struct CoveredSet {
    modulus: Modulus,
    n: usize,
    witnesses: HashMap<ZVec, PauliError>,
}

impl CoveredSet {
    pub fn contains(&self, v: &ZVec) -> bool {
        self.witnesses.contains_key(v)
    }

    pub fn witness(&self, v: &ZVec) -> Option<&PauliError> {
        self.witnesses.get(v)
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Members in lexicographic order.
    pub fn sorted(&self) -> Vec<ZVec> {
        let mut v: Vec<_> = self.witnesses.keys().cloned().collect();
        v.sort();
        v
    }
}

fn check_dims(g: &WeightedGraph, layout: &ChannelLayout) -> Result<()> {
    if layout.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: layout.n(),
        });
    }
    Ok(())
}

pub fn covered_set(g: &WeightedGraph, layout: &ChannelLayout, d: usize) -> Result<CoveredSet> {
    check_dims(g, layout)?;
    let mut witnesses = HashMap::new();
    for class in layout.enumerate_errors(g.modulus(), d) {
        let z = reduce_unchecked(g, &class.error).z;
        witnesses.entry(z).or_insert(class.error);
    }
    Ok(CoveredSet {
        modulus: g.modulus(),
        n: g.n(),
        witnesses,
    })
}

/// `c ∈ D_d`, i.e. not produced by any low-weight admissible error.
pub fn in_uncoverable(c: &ZVec, covered: &CoveredSet) -> bool {
    !covered.contains(c)
}

/// Purity vectors `s`: `supp(s) ∪ supp(s·Γ)` admissible with weight `< d`.
/// Always contains 0. Sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuritySet {
    vectors: Vec<ZVec>,
}

impl PuritySet {
    pub fn vectors(&self) -> &[ZVec] {
        &self.vectors
    }

    pub fn contains(&self, s: &ZVec) -> bool {
        self.vectors.binary_search(s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn purity_set(g: &WeightedGraph, layout: &ChannelLayout, d: usize) -> Result<PuritySet> {
    check_dims(g, layout)?;
    let p = g.modulus();
    let mut vectors = vec![ZVec::zeros(p, g.n())];
    if d > 1 {
        // supp(s) alone must already be admissible and light
        for s in layout.enumerate_shifts(p, d) {
            let sg = g.adjacency().left_mul_unchecked(&s);
            let mut sup: BTreeSet<usize> = s.support();
            sup.extend(sg.support());
            if layout.support_admissible_and_light(&sup, d) {
                debug_assert!({
                    let e = PauliError::new(s.clone(), sg).unwrap();
                    layout.admissible(&e).unwrap()
                });
                vectors.push(s);
            }
        }
    }
    vectors.sort();
    Ok(PuritySet { vectors })
}

/// Basis of `{x : v·x = 0 for all rows v}` over `Z_p`, by reduced row echelon form.
pub fn null_space(p: Modulus, n: usize, rows: &[ZVec]) -> Vec<ZVec> {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = p.inv(m[r][col]).unwrap();
        for x in m[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    let sub = p.mul(f, m[r][j]);
                    m[i][j] = p.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..n)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut x = vec![0u32; n];
            x[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = p.neg(m[row][free]);
            }
            ZVec::from_residues(p, x).unwrap()
        })
        .collect()
}

/// Basis of the vectors orthogonal to every member of `purity`.
pub fn candidate_space(purity: &PuritySet) -> Result<Vec<ZVec>> {
    let first = purity
        .vectors
        .first()
        .ok_or_else(|| Error::InvalidParameters("purity set is empty".into()))?;
    let rows: Vec<ZVec> = purity.vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    Ok(null_space(first.modulus(), first.len(), &rows))
}

/// Every `Z_p`-linear combination of `basis`, sorted lexicographically (0 first).
pub fn span(p: Modulus, n: usize, basis: &[ZVec]) -> Vec<ZVec> {
    let mut out = vec![ZVec::zeros(p, n)];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p.get() as usize);
        for v in &out {
            let mut acc = v.clone();
            next.push(acc.clone());
            for _ in 1..p.get() {
                acc = acc.add(b).unwrap();
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// A graph, channel layout, distance and clique: the unit of verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub graph: WeightedGraph,
    pub layout: ChannelLayout,
    pub d: usize,
    pub clique: Vec<ZVec>,
}

impl CodeSpec {
    /// Validates shapes and distinctness. Membership of 0 is condition (i)
    /// and is reported by [`check_clique`], not rejected here.
    pub fn new(
        graph: WeightedGraph,
        layout: ChannelLayout,
        d: usize,
        clique: Vec<ZVec>,
    ) -> Result<Self> {
        if layout.n() != graph.n() {
            return Err(Error::InvalidSpec(format!(
                "layout covers {} vertices, graph has {}",
                layout.n(),
                graph.n()
            )));
        }
        if d == 0 {
            return Err(Error::InvalidSpec("distance must be at least 1".into()));
        }
        if clique.is_empty() {
            return Err(Error::InvalidSpec("clique is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, c) in clique.iter().enumerate() {
            if c.len() != graph.n() || c.modulus() != graph.modulus() {
                return Err(Error::InvalidSpec(format!(
                    "clique vector {i} does not match the graph's length or modulus"
                )));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidSpec(format!("clique vector {i} ({c}) repeats")));
            }
        }
        Ok(CodeSpec {
            graph,
            layout,
            d,
            clique,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.graph.modulus()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.clique.len()
    }
}

/// Covered and purity sets for one `(graph, layout, d)`.
#[derive(Debug, Clone)]
pub struct CodeSpace {
    pub covered: CoveredSet,
    pub purity: PuritySet,
}

impl CodeSpace {
    pub fn new(g: &WeightedGraph, layout: &ChannelLayout, d: usize) -> Result<Self> {
        Ok(CodeSpace {
            covered: covered_set(g, layout, d)?,
            purity: purity_set(g, layout, d)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CliqueViolation {
    /// Condition (i).
    MissingZero,
    /// Condition (ii): `purity · clique[index] ≠ 0`.
    NotOrthogonal { purity: ZVec, index: usize },
    /// Condition (iii): `clique[i] − clique[j]` is produced by `witness`.
    CoveredDifference {
        i: usize,
        j: usize,
        witness: PauliError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub passed: bool,
    pub violations: Vec<CliqueViolation>,
}

impl CliqueReport {
    pub fn first_violation(&self) -> Option<&CliqueViolation> {
        self.violations.first()
    }
}

pub fn check_clique(spec: &CodeSpec) -> CliqueReport {
    // shapes were validated by CodeSpec::new
    let space = CodeSpace::new(&spec.graph, &spec.layout, spec.d).unwrap();
    check_clique_in(&space, &spec.clique)
}

pub fn check_clique_in(space: &CodeSpace, clique: &[ZVec]) -> CliqueReport {
    let mut violations = Vec::new();
    if !clique.iter().any(|c| c.is_zero()) {
        violations.push(CliqueViolation::MissingZero);
    }
    for s in space.purity.vectors() {
        if s.is_zero() {
            continue;
        }
        for (index, c) in clique.iter().enumerate() {
            if s.dot_unchecked(c) != 0 {
                violations.push(CliqueViolation::NotOrthogonal {
                    purity: s.clone(),
                    index,
                });
            }
        }
    }
    // covered sets are closed under negation, so i < j suffices
    let pairs = if space.covered.is_empty() { 0 } else { clique.len() };
    for i in 0..pairs {
        for j in i + 1..clique.len() {
            let diff = clique[i].sub(&clique[j]).unwrap();
            if let Some(w) = space.covered.witness(&diff) {
                violations.push(CliqueViolation::CoveredDifference {
                    i,
                    j,
                    witness: w.clone(),
                });
            }
        }
    }
    CliqueReport {
        passed: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_state::{stabilizer_element, star_graph};
    use rand::{Rng, SeedableRng};

    fn m(p: u32) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn covered_set_small_examples() {
        let p = m(2);
        let g = WeightedGraph::empty(p, 1);
        let l = ChannelLayout::singletons(1);
        assert!(covered_set(&g, &l, 1).unwrap().is_empty());
        let cov = covered_set(&g, &l, 2).unwrap();
        assert_eq!(cov.sorted(), vec![ZVec::zeros(p, 1), ZVec::unit(p, 1, 0)]);
        assert!(!in_uncoverable(&ZVec::unit(p, 1, 0), &cov));
        assert!(in_uncoverable(
            &ZVec::unit(p, 1, 0),
            &covered_set(&g, &l, 1).unwrap()
        ));
    }

    #[test]
    fn zero_is_covered_when_a_light_stabilizer_exists() {
        let p = m(2);
        let g = WeightedGraph::from_edges(p, 2, &[(0, 1, 1)]).unwrap();
        let l = ChannelLayout::singletons(2);
        let cov = covered_set(&g, &l, 3).unwrap();
        assert!(!in_uncoverable(&ZVec::zeros(p, 2), &cov));
        let w = cov.witness(&ZVec::zeros(p, 2)).unwrap();
        assert_eq!(w, &stabilizer_element(&g, w.s()).unwrap());
    }

    #[test]
    fn purity_set_examples() {
        let p = m(2);
        let g = WeightedGraph::empty(p, 1);
        let l = ChannelLayout::singletons(1);
        let s = purity_set(&g, &l, 2).unwrap();
        assert_eq!(s.vectors(), &[ZVec::zeros(p, 1), ZVec::unit(p, 1, 0)]);
        assert!(purity_set(&g, &l, 1).unwrap().contains(&ZVec::zeros(p, 1)));

        let p = m(3);
        let star = star_graph(p, 5, 0, 1).unwrap();
        let l = ChannelLayout::singletons(5);
        let s = purity_set(&star, &l, 3).unwrap();
        assert!(s.contains(&ZVec::unit(p, 5, 1)));
        assert!(!s.contains(&ZVec::unit(p, 5, 0)));
    }

    #[test]
    fn candidate_space_extremes() {
        let p = m(3);
        let only_zero = PuritySet {
            vectors: vec![ZVec::zeros(p, 3)],
        };
        let basis = candidate_space(&only_zero).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(span(p, 3, &basis).len(), 27);
        let full = PuritySet {
            vectors: (0..3).map(|i| ZVec::unit(p, 3, i)).collect(),
        };
        assert!(candidate_space(&full).unwrap().is_empty());
        assert!(candidate_space(&PuritySet { vectors: vec![] }).is_err());
    }

    #[test]
    fn null_space_is_orthogonal_and_full_dimension() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for p in [2u32, 3, 5] {
            let p = m(p);
            for _ in 0..40 {
                let n = rng.gen_range(1..=7);
                let rows: Vec<ZVec> = (0..rng.gen_range(0..=n))
                    .map(|_| {
                        ZVec::from_residues(p, (0..n).map(|_| rng.gen_range(0..p.get())).collect())
                            .unwrap()
                    })
                    .collect();
                let basis = null_space(p, n, &rows);
                for b in &basis {
                    for r in &rows {
                        assert_eq!(r.dot(b).unwrap(), 0);
                    }
                }
                // brute force the solution count
                let total = (p.get() as usize).pow(n as u32);
                let mut count = 0;
                for idx in 0..total {
                    let mut x = idx;
                    let v: Vec<u32> = (0..n)
                        .map(|_| {
                            let d = (x % p.get() as usize) as u32;
                            x /= p.get() as usize;
                            d
                        })
                        .collect();
                    let v = ZVec::from_residues(p, v).unwrap();
                    if rows.iter().all(|r| r.dot(&v).unwrap() == 0) {
                        count += 1;
                    }
                }
                assert_eq!(count, (p.get() as usize).pow(basis.len() as u32));
            }
        }
    }

    #[test]
    fn codespec_validation() {
        let p = m(3);
        let g = WeightedGraph::empty(p, 2);
        let l = ChannelLayout::singletons(2);
        let z = ZVec::zeros(p, 2);
        assert!(CodeSpec::new(g.clone(), l.clone(), 0, vec![z.clone()]).is_err());
        assert!(CodeSpec::new(g.clone(), l.clone(), 2, vec![]).is_err());
        assert!(CodeSpec::new(g.clone(), l.clone(), 2, vec![z.clone(), z.clone()]).is_err());
        assert!(CodeSpec::new(g.clone(), l.clone(), 2, vec![ZVec::zeros(p, 3)]).is_err());
        assert!(CodeSpec::new(g.clone(), ChannelLayout::singletons(3), 2, vec![z.clone()]).is_err());
        let no_zero = CodeSpec::new(g, l, 2, vec![ZVec::unit(p, 2, 0)]).unwrap();
        let rep = check_clique(&no_zero);
        assert!(!rep.passed);
        assert_eq!(rep.first_violation(), Some(&CliqueViolation::MissingZero));
    }

    #[test]
    fn trivial_clique_passes() {
        let p = m(3);
        let g = star_graph(p, 4, 0, 1).unwrap();
        for d in 1..4 {
            let spec =
                CodeSpec::new(g.clone(), ChannelLayout::singletons(4), d, vec![ZVec::zeros(p, 4)])
                    .unwrap();
            assert!(check_clique(&spec).passed);
        }
    }
}
