//! Knill–Laflamme verification, `⟨i|E|j⟩ = f(E) δ_ij` for every admissible
//! error of weight below `d`, done two independent ways.
//!
//! Logical states are `|c⟩ = Z^c |Γ⟩`. Algebraically,
//!
//! ```text
//! ⟨c_i| X^s Z^t |c_j⟩ = ω^{q(s) − s·t − s·c_j}   if c_i = c_j + t − s·Γ
//!                     = 0                        otherwise
//! ```
//!
//! using the reduction from [`crate::graph_state`] and `⟨Γ|Z^a|Γ⟩ = δ_{a,0}`.
//! The `−s·c_j` term is the commutation of `Z^{c_j}` past `X^s`.
//! `f(E)` is reported as the phase exponent of the diagonal entry of the
//! first clique vector; every other diagonal entry must match it.
//!
//! The dense verifier builds state vectors and applies each error as an
//! explicit operator. When the graph is disconnected the graph state is a
//! tensor product over components and every matrix element factorizes, so
//! by default the dense work is done per component.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code_space::CodeSpec;
use crate::dense::{
    check_cap, dense_apply_pauli, dense_graph_state, omega_table, DenseState,
};
use crate::error::Result;
use crate::graph_state::{reduce_unchecked, PauliError, WeightedGraph};
use crate::zp::{Modulus, PhaseExp, ZVec};

/// Absolute tolerance for dense matrix elements.
pub const DENSE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    OffDiagonalNonzero,
    DiagonalInconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KlViolation {
    pub error: PauliError,
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub errors_checked: usize,
    /// Sorted by `(error, i, j)`.
    pub violations: Vec<KlViolation>,
    /// `f(E)` for each error acting on the code as a pure phase.
    pub f_values: BTreeMap<PauliError, PhaseExp>,
}

impl VerificationReport {
    fn finish(errors_checked: usize, mut violations: Vec<KlViolation>, f_values: BTreeMap<PauliError, PhaseExp>) -> Self {
        violations.sort();
        VerificationReport {
            passed: violations.is_empty(),
            errors_checked,
            violations,
            f_values,
        }
    }

    pub fn f_consistent(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::DiagonalInconsistent)
    }
}

/// `⟨c_i| E |c_j⟩` as `Some(phase exponent)` or `None` for zero.
pub fn algebraic_element(g: &WeightedGraph, ci: &ZVec, cj: &ZVec, e: &PauliError) -> Option<PhaseExp> {
    let r = reduce_unchecked(g, e);
    let target = cj.add(&r.z).ok()?;
    if &target != ci {
        return None;
    }
    let shift = e.s().dot_unchecked(cj) as i64;
    Some(PhaseExp::new(g.modulus(), r.phase.exponent() as i64 - shift))
}

pub fn kl_check_algebraic(spec: &CodeSpec) -> VerificationReport {
    let g = &spec.graph;
    let p = g.modulus();
    let index: HashMap<&ZVec, usize> = spec.clique.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut violations = Vec::new();
    let mut f_values = BTreeMap::new();
    let mut checked = 0;
    for class in spec.layout.enumerate_errors(p, spec.d) {
        checked += 1;
        let e = class.error;
        let r = reduce_unchecked(g, &e);
        if r.z.is_zero() {
            let phase_of = |c: &ZVec| {
                PhaseExp::new(p, r.phase.exponent() as i64 - e.s().dot_unchecked(c) as i64)
            };
            let f = phase_of(&spec.clique[0]);
            for (i, c) in spec.clique.iter().enumerate().skip(1) {
                if phase_of(c) != f {
                    violations.push(KlViolation {
                        error: e.clone(),
                        i,
                        j: i,
                        kind: ViolationKind::DiagonalInconsistent,
                    });
                }
            }
            f_values.insert(e, f);
        } else {
            for (j, cj) in spec.clique.iter().enumerate() {
                let target = cj.add(&r.z).unwrap();
                if let Some(&i) = index.get(&target) {
                    violations.push(KlViolation {
                        error: e.clone(),
                        i,
                        j,
                        kind: ViolationKind::OffDiagonalNonzero,
                    });
                }
            }
        }
    }
    VerificationReport::finish(checked, violations, f_values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenseMode {
    /// One dense factor per connected component of the graph.
    Factored,
    /// A single state vector over all `n` sub-qudits.
    Full,
}

struct Factor {
    vertices: Vec<usize>,
    /// Distinct restrictions of clique vectors, as dense logical states.
    states: Vec<DenseState>,
    /// Clique index → index into `states`.
    of_clique: Vec<usize>,
    memo: HashMap<PauliError, Vec<Complex64>>,
}

impl Factor {
    fn new(spec: &CodeSpec, vertices: Vec<usize>, cap: usize) -> Result<Self> {
        let p = spec.modulus();
        let sub = spec.graph.induced(&vertices);
        let psi = dense_graph_state(&sub, cap)?;
        let mut restrictions: Vec<ZVec> = Vec::new();
        let mut of_clique = Vec::with_capacity(spec.k());
        for c in &spec.clique {
            let r = restrict(p, c, &vertices);
            let idx = match restrictions.iter().position(|x| x == &r) {
                Some(k) => k,
                None => {
                    restrictions.push(r);
                    restrictions.len() - 1
                }
            };
            of_clique.push(idx);
        }
        let states = restrictions
            .iter()
            .map(|r| dense_apply_pauli(&psi, &PauliError::phase_only(r.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factor {
            vertices,
            states,
            of_clique,
            memo: HashMap::new(),
        })
    }

    /// Matrix `⟨a|E|b⟩` over distinct restrictions, row-major.
    fn matrix(&mut self, p: Modulus, e: &PauliError) -> &[Complex64] {
        let local = PauliError::new(restrict(p, e.s(), &self.vertices), restrict(p, e.t(), &self.vertices)).unwrap();
        let states = &self.states;
        self.memo.entry(local).or_insert_with_key(|local| {
            let r = states.len();
            let moved: Vec<DenseState> = states
                .iter()
                .map(|st| dense_apply_pauli(st, local).unwrap())
                .collect();
            let mut m = vec![Complex64::new(0.0, 0.0); r * r];
            for a in 0..r {
                for b in 0..r {
                    m[a * r + b] = states[a].inner(&moved[b]);
                }
            }
            m
        })
    }
}

fn restrict(p: Modulus, v: &ZVec, vertices: &[usize]) -> ZVec {
    ZVec::from_residues(p, vertices.iter().map(|&a| v.get(a)).collect()).unwrap()
}

fn phase_exponent(p: Modulus, z: Complex64) -> PhaseExp {
    let turns = z.arg() / (2.0 * std::f64::consts::PI) * p.get() as f64;
    PhaseExp::new(p, turns.round() as i64)
}

/// Dense verifier, factored over connected components.
pub fn kl_check_dense(spec: &CodeSpec, cap: usize) -> Result<VerificationReport> {
    kl_check_dense_with(spec, cap, DenseMode::Factored)
}

pub fn kl_check_dense_with(spec: &CodeSpec, cap: usize, mode: DenseMode) -> Result<VerificationReport> {
    let p = spec.modulus();
    check_cap(p, spec.n(), cap)?;
    let groups = match mode {
        DenseMode::Factored => spec.graph.components(),
        DenseMode::Full => vec![(0..spec.n()).collect()],
    };
    let mut factors = groups
        .into_iter()
        .map(|vs| Factor::new(spec, vs, cap))
        .collect::<Result<Vec<_>>>()?;
    let k = spec.k();
    let mut violations = Vec::new();
    let mut f_values = BTreeMap::new();
    let mut checked = 0;
    let mut element = vec![Complex64::new(1.0, 0.0); k * k];
    for class in spec.layout.enumerate_errors(p, spec.d) {
        checked += 1;
        let e = class.error;
        element.iter_mut().for_each(|x| *x = Complex64::new(1.0, 0.0));
        for f in factors.iter_mut() {
            let r = f.states.len();
            let of = f.of_clique.clone();
            let m = f.matrix(p, &e);
            for i in 0..k {
                for j in 0..k {
                    element[i * k + j] *= m[of[i] * r + of[j]];
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && element[i * k + j].norm() > DENSE_TOL {
                    violations.push(KlViolation {
                        error: e.clone(),
                        i,
                        j,
                        kind: ViolationKind::OffDiagonalNonzero,
                    });
                }
            }
        }
        let reference = element[0];
        for i in 1..k {
            if (element[i * k + i] - reference).norm() > DENSE_TOL {
                violations.push(KlViolation {
                    error: e.clone(),
                    i,
                    j: i,
                    kind: ViolationKind::DiagonalInconsistent,
                });
            }
        }
        if reference.norm() > DENSE_TOL {
            f_values.insert(e, phase_exponent(p, reference));
        }
    }
    Ok(VerificationReport::finish(checked, violations, f_values))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub passed: bool,
    pub samples: usize,
    pub max_deviation: f64,
    /// `(error index in enumeration order, i, j)` of disagreeing samples.
    pub disagreements: Vec<(usize, usize, usize)>,
}

/// Compares algebraic and full-dimension dense matrix elements on a seeded
/// sample of `(error, i, j)` triples.
///
/// Half the samples pick `i` uniformly; the other half pick the row where
/// the element could be nonzero, so that phases get compared and not only
/// zeros.
pub fn cross_validate(spec: &CodeSpec, sample_size: usize, seed: u64, cap: usize) -> Result<CrossValidation> {
    let p = spec.modulus();
    check_cap(p, spec.n(), cap)?;
    if sample_size == 0 {
        return Ok(CrossValidation {
            passed: true,
            samples: 0,
            max_deviation: 0.0,
            disagreements: Vec::new(),
        });
    }
    let errors: Vec<PauliError> = spec.layout.enumerate_errors(p, spec.d).map(|c| c.error).collect();
    if errors.is_empty() {
        return Ok(CrossValidation {
            passed: true,
            samples: 0,
            max_deviation: 0.0,
            disagreements: Vec::new(),
        });
    }
    let psi = dense_graph_state(&spec.graph, cap)?;
    let omega = omega_table(p);
    let index: HashMap<&ZVec, usize> = spec.clique.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut logical: HashMap<usize, DenseState> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = spec.k();
    let mut max_dev: f64 = 0.0;
    let mut disagreements = Vec::new();
    for n in 0..sample_size {
        let ei = rng.gen_range(0..errors.len());
        let e = &errors[ei];
        let j = rng.gen_range(0..k);
        let uniform_i = rng.gen_range(0..k);
        let i = if n % 2 == 0 {
            uniform_i
        } else {
            let z = reduce_unchecked(&spec.graph, e).z;
            let target = spec.clique[j].add(&z).unwrap();
            index.get(&target).copied().unwrap_or(uniform_i)
        };
        for idx in [i, j] {
            if !logical.contains_key(&idx) {
                let st = dense_apply_pauli(&psi, &PauliError::phase_only(spec.clique[idx].clone()))?;
                logical.insert(idx, st);
            }
        }
        let moved = dense_apply_pauli(&logical[&j], e)?;
        let dense = logical[&i].inner(&moved);
        let alg = match algebraic_element(&spec.graph, &spec.clique[i], &spec.clique[j], e) {
            Some(ph) => omega[ph.exponent() as usize],
            None => Complex64::new(0.0, 0.0),
        };
        let dev = (dense - alg).norm();
        max_dev = max_dev.max(dev);
        if dev > DENSE_TOL {
            disagreements.push((ei, i, j));
        }
    }
    Ok(CrossValidation {
        passed: disagreements.is_empty(),
        samples: sample_size,
        max_deviation: max_dev,
        disagreements,
    })
}
