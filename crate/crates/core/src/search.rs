//! Coding-clique search.
//!
//! Vertices of the search graph are the nonzero candidate-space vectors that
//! are uncoverable; `u ~ v` when `u − v` is uncoverable too. The clique is
//! anchored at 0, which is adjacent to every vertex by construction. The
//! general mode is a branch and bound with greedy-colouring bounds; the
//! subgroup mode only returns additive subgroups of `Z_p^n`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code_space::{candidate_space, check_clique_in, span, CodeSpace};
use crate::error::{Error, Result};
use crate::graph_state::WeightedGraph;
use crate::noise::ChannelLayout;
use crate::zp::{Modulus, ZVec};

/// Largest candidate space the branch and bound will build a
/// compatibility table for.
pub const MAX_CANDIDATES: usize = 1 << 15;
/// Largest candidate space returned whole when nothing is coverable.
pub const MAX_ENUMERATION: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    #[default]
    General,
    Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop as soon as a clique of this size is found.
    pub target_k: Option<usize>,
    /// Maximum number of search nodes; `None` is unlimited.
    pub node_budget: Option<u64>,
    pub mode: SearchMode,
    /// 0 keeps candidates in lexicographic order, anything else shuffles them.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            target_k: None,
            node_budget: None,
            mode: SearchMode::General,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Optimal,
    TargetMet,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Sorted, starting with 0.
    pub clique: Vec<ZVec>,
    pub status: SearchStatus,
    pub nodes_explored: u64,
    /// Number of nonzero uncoverable candidates.
    pub candidates: usize,
}

/// All `Z_p` combinations of `gens`, sorted with 0 first.
pub fn expand_generators(p: Modulus, n: usize, gens: &[ZVec]) -> Result<Vec<ZVec>> {
    for g in gens {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: g.len(),
            });
        }
        if g.modulus() != p {
            return Err(Error::ModulusMismatch {
                left: p.get(),
                right: g.modulus().get(),
            });
        }
    }
    let size = (p.get() as usize).checked_pow(gens.len() as u32);
    if size.map_or(true, |s| s > MAX_CANDIDATES * 32) {
        return Err(Error::SearchTooLarge(size.unwrap_or(usize::MAX)));
    }
    Ok(span(p, n, gens))
}

pub fn search(
    g: &WeightedGraph,
    layout: &ChannelLayout,
    d: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if layout.n() != g.n() {
        return Err(Error::InvalidSpec(format!(
            "layout covers {} vertices, graph has {}",
            layout.n(),
            g.n()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameters("distance must be at least 1".into()));
    }
    let p = g.modulus();
    let n = g.n();
    let space = CodeSpace::new(g, layout, d)?;
    let basis = candidate_space(&space.purity)?;
    let size = (p.get() as usize).checked_pow(basis.len() as u32);
    // nothing coverable (d = 1, or every error is on noiseless vertices):
    // all candidates are pairwise compatible
    let limit = if space.covered.is_empty() { MAX_ENUMERATION } else { MAX_CANDIDATES };
    let size = match size {
        Some(s) if s <= limit => s,
        _ => return Err(Error::SearchTooLarge(size.unwrap_or(usize::MAX))),
    };
    if space.covered.is_empty() {
        let all = span(p, n, &basis);
        let candidates = all.len() - 1;
        let nonzero = all.into_iter().filter(|v| !v.is_zero()).collect();
        return finish(p, n, nonzero, SearchStatus::Optimal, 0, candidates, &space);
    }
    let all = span(p, n, &basis);
    debug_assert_eq!(all.len(), size);
    let mut verts: Vec<ZVec> = all
        .into_iter()
        .filter(|c| !c.is_zero() && !space.covered.contains(c))
        .collect();
    if opts.seed != 0 {
        verts.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    }
    let candidates = verts.len();
    let (chosen, status, nodes) = match opts.mode {
        SearchMode::General => {
            let adj = adjacency(&verts, &space);
            let mut bb = BranchBound {
                adj: &adj,
                best: Vec::new(),
                current: Vec::new(),
                nodes: 0,
                budget: opts.node_budget,
                target: opts.target_k.map(|k| k.saturating_sub(1)),
                stop: None,
            };
            let all_idx: Vec<usize> = (0..verts.len()).collect();
            bb.expand(all_idx);
            let status = bb.stop.unwrap_or(SearchStatus::Optimal);
            let chosen = bb.best.iter().map(|&i| verts[i].clone()).collect();
            (chosen, status, bb.nodes)
        }
        SearchMode::Subgroup => {
            let mut sg = SubgroupSearch {
                p,
                verts: &verts,
                space: &space,
                rank: basis.len(),
                best: vec![ZVec::zeros(p, n)],
                nodes: 0,
                budget: opts.node_budget,
                target: opts.target_k,
                stop: None,
            };
            sg.dfs(&[], &[ZVec::zeros(p, n)], 0);
            let status = sg.stop.unwrap_or(SearchStatus::Optimal);
            let nonzero = sg.best.into_iter().filter(|v| !v.is_zero()).collect();
            (nonzero, status, sg.nodes)
        }
    };
    finish(p, n, chosen, status, nodes, candidates, &space)
}

fn finish(
    p: Modulus,
    n: usize,
    nonzero: Vec<ZVec>,
    status: SearchStatus,
    nodes: u64,
    candidates: usize,
    space: &CodeSpace,
) -> Result<SearchOutcome> {
    let mut clique = nonzero;
    clique.push(ZVec::zeros(p, n));
    clique.sort();
    debug_assert!(check_clique_in(space, &clique).passed);
    Ok(SearchOutcome {
        clique,
        status,
        nodes_explored: nodes,
        candidates,
    })
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

fn adjacency(verts: &[ZVec], space: &CodeSpace) -> Vec<Bitset> {
    let mut adj: Vec<Bitset> = (0..verts.len()).map(|_| Bitset::new(verts.len())).collect();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let diff = verts[i].sub(&verts[j]).unwrap();
            if !space.covered.contains(&diff) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    adj
}

struct BranchBound<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    /// Target on the number of nonzero members.
    target: Option<usize>,
    stop: Option<SearchStatus>,
}

impl BranchBound<'_> {
    /// Greedy sequential colouring; returns vertices ordered by colour with
    /// the colour number of each.
    fn colour(&self, p: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.len());
        let mut colours = Vec::with_capacity(p.len());
        let mut uncoloured: Vec<usize> = p.to_vec();
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut rest = Vec::new();
            let mut class: Vec<usize> = Vec::new();
            for &v in &uncoloured {
                if class.iter().all(|&u| !self.adj[u].has(v)) {
                    class.push(v);
                } else {
                    rest.push(v);
                }
            }
            for v in class {
                order.push(v);
                colours.push(k);
            }
            uncoloured = rest;
        }
        (order, colours)
    }

    fn expand(&mut self, p: Vec<usize>) {
        if self.stop.is_some() {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.stop = Some(SearchStatus::BudgetExhausted);
            return;
        }
        if p.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
                if self.target.is_some_and(|t| self.best.len() >= t) {
                    self.stop = Some(SearchStatus::TargetMet);
                }
            }
            return;
        }
        let (order, colours) = self.colour(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let next: Vec<usize> = order[..i].iter().copied().filter(|&u| self.adj[v].has(u)).collect();
            self.expand(next);
            self.current.pop();
            if self.stop.is_some() {
                return;
            }
        }
    }
}

struct SubgroupSearch<'a> {
    p: Modulus,
    verts: &'a [ZVec],
    space: &'a CodeSpace,
    rank: usize,
    best: Vec<ZVec>,
    nodes: u64,
    budget: Option<u64>,
    target: Option<usize>,
    stop: Option<SearchStatus>,
}

impl SubgroupSearch<'_> {
    fn dfs(&mut self, gens: &[usize], group: &[ZVec], start: usize) {
        if self.stop.is_some() {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.stop = Some(SearchStatus::BudgetExhausted);
            return;
        }
        if group.len() > self.best.len() {
            self.best = group.to_vec();
            if self.target.is_some_and(|t| self.best.len() >= t) {
                self.stop = Some(SearchStatus::TargetMet);
                return;
            }
        }
        let q = self.p.get() as usize;
        for i in start..self.verts.len() {
            // a subgroup of rank r has p^r elements
            let room = self.rank - gens.len();
            if q.saturating_pow(gens.len() as u32 + room as u32) <= self.best.len() {
                return;
            }
            let v = &self.verts[i];
            if group.contains(v) {
                continue;
            }
            let mut bigger = Vec::with_capacity(group.len() * q);
            let mut ok = true;
            'outer: for g in group {
                let mut acc = g.clone();
                bigger.push(acc.clone());
                for _ in 1..q {
                    acc = acc.add(v).unwrap();
                    if self.space.covered.contains(&acc) {
                        ok = false;
                        break 'outer;
                    }
                    bigger.push(acc.clone());
                }
            }
            if !ok {
                continue;
            }
            let mut next = gens.to_vec();
            next.push(i);
            self.dfs(&next, &bigger, i + 1);
            if self.stop.is_some() {
                return;
            }
        }
    }
}
