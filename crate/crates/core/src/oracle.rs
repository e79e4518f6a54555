//! Seeded randomized cross-checks between the algebraic code paths and the
//! dense state-vector oracle.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code_space::{check_clique, CodeSpec};
use crate::dense::{
    check_cap, dense_apply_pauli, dense_graph_state, dense_graph_state_via_gates,
};
use crate::error::Result;
use crate::graph_state::{reduce_error, stabilizer_eigenphase, stabilizer_element, PauliError, WeightedGraph};
use crate::kl::{kl_check_algebraic, kl_check_dense_with, DenseMode, DENSE_TOL};
use crate::noise::ChannelLayout;
use crate::search::{search, SearchOptions};
use crate::zp::{Modulus, ZVec};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    /// One line per failing trial.
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn random_vec(rng: &mut impl Rng, p: Modulus, n: usize) -> ZVec {
    ZVec::from_residues(p, (0..n).map(|_| rng.gen_range(0..p.get())).collect()).unwrap()
}

/// Every edge weight drawn uniformly from `Z_p`.
pub fn random_graph(rng: &mut impl Rng, p: Modulus, n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::empty(p, n);
    for a in 0..n {
        for b in a + 1..n {
            g.set_edge(a, b, rng.gen_range(0..p.get())).unwrap();
        }
    }
    g
}

/// Random channels of one or two vertices, each vertex noiseless with
/// probability 1/5.
pub fn random_layout(rng: &mut impl Rng, n: usize) -> ChannelLayout {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut channels = Vec::new();
    let mut i = 0;
    while i < n {
        let size = if i + 1 < n && rng.gen_bool(0.5) { 2 } else { 1 };
        channels.push(order[i..i + size].to_vec());
        i += size;
    }
    let noiseless: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
    ChannelLayout::new(n, channels, noiseless).unwrap()
}

fn random_error(rng: &mut impl Rng, p: Modulus, n: usize) -> PauliError {
    PauliError::new(random_vec(rng, p, n), random_vec(rng, p, n)).unwrap()
}

/// `X^s Z^{sΓ}|Γ⟩ = ω^{−q(s)}|Γ⟩` on random graphs and shifts.
pub fn eigenrelation_suite(p: Modulus, n: usize, trials: usize, seed: u64, cap: usize) -> Result<SuiteResult> {
    check_cap(p, n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g = random_graph(&mut rng, p, n);
        let s = random_vec(&mut rng, p, n);
        let psi = dense_graph_state(&g, cap)?;
        let moved = dense_apply_pauli(&psi, &stabilizer_element(&g, &s)?)?;
        let want = psi.scaled(stabilizer_eigenphase(&g, &s)?);
        let diff = moved.max_abs_diff(&want);
        if diff > DENSE_TOL {
            failures.push(format!("trial {trial}: s = {s}, deviation {diff:e}"));
        }
    }
    Ok(SuiteResult {
        name: "stabilizer eigenrelation",
        trials,
        failures,
    })
}

/// `E|Γ⟩ = ω^phase Z^z|Γ⟩` for the closed-form reduction of random errors.
pub fn reduction_suite(p: Modulus, n: usize, trials: usize, seed: u64, cap: usize) -> Result<SuiteResult> {
    check_cap(p, n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g = random_graph(&mut rng, p, n);
        let e = random_error(&mut rng, p, n);
        let psi = dense_graph_state(&g, cap)?;
        let r = reduce_error(&g, &e)?;
        let got = dense_apply_pauli(&psi, &e)?;
        let want = dense_apply_pauli(&psi, &PauliError::phase_only(r.z.clone()))?.scaled(r.phase);
        let diff = got.max_abs_diff(&want);
        if diff > DENSE_TOL {
            failures.push(format!("trial {trial}: s = {}, t = {}, deviation {diff:e}", e.s(), e.t()));
        }
    }
    Ok(SuiteResult {
        name: "reduction exactness",
        trials,
        failures,
    })
}

/// Closed-form amplitudes against the controlled-phase gate construction.
pub fn construction_suite(p: Modulus, n: usize, trials: usize, seed: u64, cap: usize) -> Result<SuiteResult> {
    check_cap(p, n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g = random_graph(&mut rng, p, n);
        let diff = dense_graph_state(&g, cap)?.max_abs_diff(&dense_graph_state_via_gates(&g, cap)?);
        if diff > DENSE_TOL {
            failures.push(format!("trial {trial}: deviation {diff:e}"));
        }
    }
    Ok(SuiteResult {
        name: "construction identity",
        trials,
        failures,
    })
}

fn random_spec(rng: &mut impl Rng, p: Modulus, n: usize) -> CodeSpec {
    let g = random_graph(rng, p, n);
    let layout = random_layout(rng, n);
    let d = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let mut clique = vec![ZVec::zeros(p, n)];
    while clique.len() < k {
        let v = random_vec(rng, p, n);
        if !clique.contains(&v) {
            clique.push(v);
        }
        if clique.len() as u128 >= (p.get() as u128).pow(n as u32) {
            break;
        }
    }
    CodeSpec::new(g, layout, d, clique).unwrap()
}

/// Algebraic, factored dense and full dense verifiers return identical
/// reports on random specs.
pub fn agreement_suite(p: Modulus, n: usize, trials: usize, seed: u64, cap: usize) -> Result<SuiteResult> {
    check_cap(p, n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let spec = random_spec(&mut rng, p, n);
        let alg = kl_check_algebraic(&spec);
        let factored = kl_check_dense_with(&spec, cap, DenseMode::Factored)?;
        let full = kl_check_dense_with(&spec, cap, DenseMode::Full)?;
        if alg != factored || alg != full {
            failures.push(format!(
                "trial {trial}: algebraic {} violations, factored {}, full {}",
                alg.violations.len(),
                factored.violations.len(),
                full.violations.len()
            ));
        }
    }
    Ok(SuiteResult {
        name: "algebraic vs dense agreement",
        trials,
        failures,
    })
}

/// Whenever the coding-clique conditions hold, KL holds. Cliques come from
/// the search (and random sub-cliques of it) so most trials are non-vacuous.
pub fn implication_suite(p: Modulus, n: usize, trials: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g = random_graph(&mut rng, p, n);
        let layout = random_layout(&mut rng, n);
        let d = rng.gen_range(2..=3);
        let opts = SearchOptions {
            seed: rng.gen(),
            node_budget: Some(10_000),
            ..SearchOptions::default()
        };
        let found = search(&g, &layout, d, &opts)?;
        let mut clique = found.clique;
        if clique.len() > 1 && rng.gen_bool(0.5) {
            let keep = rng.gen_range(1..=clique.len());
            clique[1..].shuffle(&mut rng);
            clique.truncate(keep);
        }
        let spec = CodeSpec::new(g, layout, d, clique).unwrap();
        if check_clique(&spec).passed && !kl_check_algebraic(&spec).passed {
            failures.push(format!("trial {trial}: clique conditions hold but KL fails"));
        }
    }
    Ok(SuiteResult {
        name: "clique conditions imply KL",
        trials,
        failures,
    })
}

/// Everything `qclique oracle` runs.
pub fn run_all(p: Modulus, n: usize, trials: usize, seed: u64, cap: usize) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        eigenrelation_suite(p, n, trials, seed, cap)?,
        reduction_suite(p, n, trials, seed.wrapping_add(1), cap)?,
        construction_suite(p, n, trials, seed.wrapping_add(2), cap)?,
        agreement_suite(p, n, trials, seed.wrapping_add(3), cap)?,
        implication_suite(p, n, trials, seed.wrapping_add(4))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DENSE_CAP_DEFAULT;

    #[test]
    fn small_suites_pass() {
        for p in [2, 3] {
            let p = Modulus::new(p).unwrap();
            for r in run_all(p, 3, 20, 9, DENSE_CAP_DEFAULT).unwrap() {
                assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            }
        }
    }

    #[test]
    fn zero_trials_is_vacuous() {
        let p = Modulus::new(2).unwrap();
        for r in run_all(p, 4, 0, 0, DENSE_CAP_DEFAULT).unwrap() {
            assert!(r.passed());
            assert_eq!(r.trials, 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = Modulus::new(3).unwrap();
        assert!(run_all(p, 6, 1, 0, 100).is_err());
    }
}
