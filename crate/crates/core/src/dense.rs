//! Dense state-vector oracle for small instances.
//!
//! Basis index of `|μ⟩` is the big-endian digit string `μ_0 μ_1 … μ_{n-1}`
//! (vertex 0 most significant). This module exists to cross-check the exact
//! algebra elsewhere in the crate, not to verify large codes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph_state::{PauliError, WeightedGraph};
use crate::zp::{Modulus, PhaseExp};

/// Default cap on the number of amplitudes a dense state may hold.
pub const DENSE_CAP_DEFAULT: usize = 1 << 20;

/// Environment variable overriding [`DENSE_CAP_DEFAULT`] in the workbench.
pub const DENSE_CAP_ENV: &str = "QCLIQUE_DENSE_CAP";

pub fn dense_cap_from_env() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DENSE_CAP_DEFAULT)
}

/// Returns `p^n` if it fits under `cap`.
pub fn check_cap(p: Modulus, n: usize, cap: usize) -> Result<usize> {
    let needed = (p.get() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::OracleLimit { needed, cap });
    }
    Ok(needed as usize)
}

pub(crate) fn omega_table(p: Modulus) -> Vec<Complex64> {
    let pf = p.get() as f64;
    (0..p.get())
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / pf))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    p: Modulus,
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn from_amplitudes(p: Modulus, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = check_cap(p, n, usize::MAX)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: amps.len(),
            });
        }
        Ok(DenseState { p, n, amps })
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(p: Modulus, digits: &[u32], cap: usize) -> Result<Self> {
        let n = digits.len();
        let dim = check_cap(p, n, cap)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        let idx = digits
            .iter()
            .fold(0usize, |acc, &d| acc * p.get() as usize + (d % p.get()) as usize);
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(DenseState { p, n, amps })
    }

    pub fn modulus(&self) -> Modulus {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, phase: PhaseExp) -> DenseState {
        let w = omega_table(self.p)[phase.exponent() as usize];
        DenseState {
            p: self.p,
            n: self.n,
            amps: self.amps.iter().map(|a| a * w).collect(),
        }
    }

    /// Largest per-amplitude deviation.
    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn digits(&self, mut index: usize, out: &mut [u32]) {
        let p = self.p.get() as usize;
        for d in out.iter_mut().rev() {
            *d = (index % p) as u32;
            index /= p;
        }
    }
}

/// `|θ_i⟩ = p^{-1/2} Σ_l ω^{-l i} |l⟩`.
pub fn theta_state(p: Modulus, i: u32) -> DenseState {
    let omega = omega_table(p);
    let norm = 1.0 / (p.get() as f64).sqrt();
    let amps = (0..p.get())
        .map(|l| omega[p.reduce(-((l * i) as i64)) as usize] * norm)
        .collect();
    DenseState { p, n: 1, amps }
}

/// Amplitude `p^{-n/2} ω^{q(μ)}` at every basis index.
pub fn dense_graph_state(g: &WeightedGraph, cap: usize) -> Result<DenseState> {
    let p = g.modulus();
    let n = g.n();
    let dim = check_cap(p, n, cap)?;
    let omega = omega_table(p);
    let norm = 1.0 / (dim as f64).sqrt();
    let mut state = DenseState {
        p,
        n,
        amps: Vec::with_capacity(dim),
    };
    let mut mu = vec![0u32; n];
    for idx in 0..dim {
        state.digits(idx, &mut mu);
        let q = g.adjacency().pair_sum(&mu);
        state.amps.push(omega[q as usize] * norm);
    }
    Ok(state)
}

/// Same state, built as `Π_{a<b} U_ab^{Γ_ab} |θ_0⟩^{⊗n}` with the diagonal
/// controlled-phase gate `U_ab = Σ ω^{ij} |i⟩⟨i|_a ⊗ |j⟩⟨j|_b`.
pub fn dense_graph_state_via_gates(g: &WeightedGraph, cap: usize) -> Result<DenseState> {
    let p = g.modulus();
    let n = g.n();
    check_cap(p, n, cap)?;
    let mut state = theta_state(p, 0);
    for _ in 1..n {
        state = tensor(&state, &theta_state(p, 0));
    }
    if n == 0 {
        state = DenseState {
            p,
            n: 0,
            amps: vec![Complex64::new(1.0, 0.0)],
        };
    }
    for (a, b, w) in g.edges() {
        for _ in 0..w {
            apply_controlled_phase(&mut state, a, b);
        }
    }
    Ok(state)
}

fn apply_controlled_phase(state: &mut DenseState, a: usize, b: usize) {
    let p = state.p;
    let omega = omega_table(p);
    let mut mu = vec![0u32; state.n];
    for idx in 0..state.amps.len() {
        state.digits(idx, &mut mu);
        let k = p.mul(mu[a], mu[b]);
        state.amps[idx] *= omega[k as usize];
    }
}

/// `|x⟩ ⊗ |y⟩`; `x` holds the more significant digits.
pub fn tensor(x: &DenseState, y: &DenseState) -> DenseState {
    let mut amps = Vec::with_capacity(x.dim() * y.dim());
    for a in &x.amps {
        for b in &y.amps {
            amps.push(a * b);
        }
    }
    DenseState {
        p: x.p,
        n: x.n + y.n,
        amps,
    }
}

/// Applies `X^s Z^t` (Z first): the amplitude at `μ` picks up `ω^{t·μ}` and
/// moves to `μ + s`.
pub fn dense_apply_pauli(state: &DenseState, e: &PauliError) -> Result<DenseState> {
    if e.n() != state.n {
        return Err(Error::DimensionMismatch {
            expected: state.n,
            actual: e.n(),
        });
    }
    if e.modulus() != state.p {
        return Err(Error::ModulusMismatch {
            left: state.p.get(),
            right: e.modulus().get(),
        });
    }
    let p = state.p;
    let pu = p.get() as usize;
    let omega = omega_table(p);
    let s = e.s().entries();
    let t = e.t().entries();
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    let mut mu = vec![0u32; state.n];
    for (idx, amp) in state.amps.iter().enumerate() {
        state.digits(idx, &mut mu);
        let mut phase = 0u64;
        let mut target = 0usize;
        for a in 0..state.n {
            phase += t[a] as u64 * mu[a] as u64;
            target = target * pu + p.add(mu[a], s[a]) as usize;
        }
        out[target] = amp * omega[(phase % pu as u64) as usize];
    }
    Ok(DenseState {
        p,
        n: state.n,
        amps: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_state::{reduce_error, stabilizer_eigenphase, stabilizer_element, star_graph};
    use crate::zp::ZVec;
    use rand::{Rng, SeedableRng};

    const TOL: f64 = 1e-10;

    fn m(p: u32) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_graph(rng: &mut impl Rng, p: Modulus, n: usize) -> WeightedGraph {
        let mut g = WeightedGraph::empty(p, n);
        for a in 0..n {
            for b in a + 1..n {
                g.set_edge(a, b, rng.gen_range(0..p.get())).unwrap();
            }
        }
        g
    }

    fn random_vec(rng: &mut impl Rng, p: Modulus, n: usize) -> ZVec {
        ZVec::from_residues(p, (0..n).map(|_| rng.gen_range(0..p.get())).collect()).unwrap()
    }

    #[test]
    fn single_vertex_is_theta_zero() {
        for p in [2, 3, 5] {
            let g = WeightedGraph::empty(m(p), 1);
            let st = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
            assert!(st.max_abs_diff(&theta_state(m(p), 0)) < TOL);
            let expect = 1.0 / (p as f64).sqrt();
            assert!(st.amplitudes().iter().all(|a| (a - c(expect, 0.0)).norm() < TOL));
        }
    }

    #[test]
    fn edge_state_qubits() {
        let g = WeightedGraph::from_edges(m(2), 2, &[(0, 1, 1)]).unwrap();
        let expect = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        for st in [
            dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap(),
            dense_graph_state_via_gates(&g, DENSE_CAP_DEFAULT).unwrap(),
        ] {
            for (a, b) in st.amplitudes().iter().zip(expect) {
                assert!((a - b).norm() < TOL);
            }
        }
    }

    #[test]
    fn edge_state_qutrits() {
        let g = WeightedGraph::from_edges(m(3), 2, &[(0, 1, 1)]).unwrap();
        let st = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
        let w = omega_table(m(3));
        for m1 in 0..3u32 {
            for m2 in 0..3u32 {
                let expect = w[((m1 * m2) % 3) as usize] / 3.0;
                assert!((st.amplitudes()[(m1 * 3 + m2) as usize] - expect).norm() < TOL);
            }
        }
    }

    #[test]
    fn empty_graph_via_gates_is_product_of_theta_zero() {
        let g = WeightedGraph::empty(m(3), 3);
        let st = dense_graph_state_via_gates(&g, DENSE_CAP_DEFAULT).unwrap();
        let expect = 1.0 / 27f64.sqrt();
        assert!(st.amplitudes().iter().all(|a| (a - c(expect, 0.0)).norm() < TOL));
    }

    #[test]
    fn cap_is_enforced() {
        let g = WeightedGraph::empty(m(3), 13);
        assert!(matches!(
            dense_graph_state(&g, DENSE_CAP_DEFAULT),
            Err(Error::OracleLimit { .. })
        ));
        assert!(dense_graph_state(&WeightedGraph::empty(m(3), 4), 80).is_err());
        assert!(dense_graph_state(&WeightedGraph::empty(m(3), 4), 81).is_ok());
    }

    #[test]
    fn pauli_action_examples() {
        let id = PauliError::identity(m(2), 1);
        let zero = DenseState::basis(m(2), &[0], 16).unwrap();
        assert_eq!(dense_apply_pauli(&zero, &id).unwrap(), zero);
        let flip = PauliError::new(
            ZVec::from_digits(m(2), "1").unwrap(),
            ZVec::from_digits(m(2), "0").unwrap(),
        )
        .unwrap();
        let one = DenseState::basis(m(2), &[1], 16).unwrap();
        assert!(dense_apply_pauli(&zero, &flip).unwrap().max_abs_diff(&one) < TOL);
    }

    #[test]
    fn theta_basis_relations() {
        for p in [2u32, 3, 5] {
            let p = m(p);
            let x = PauliError::new(ZVec::unit(p, 1, 0), ZVec::zeros(p, 1)).unwrap();
            let z = PauliError::phase_only(ZVec::unit(p, 1, 0));
            for i in 0..p.get() {
                let th = theta_state(p, i);
                let xi = dense_apply_pauli(&th, &x).unwrap();
                assert!(xi.max_abs_diff(&th.scaled(PhaseExp::new(p, i as i64))) < TOL);
                let zi = dense_apply_pauli(&th, &z).unwrap();
                let prev = theta_state(p, p.sub(i, 1));
                assert!(zi.max_abs_diff(&prev) < TOL);
            }
        }
    }

    /// Exhaustive check of the closed-form reduction phase for n <= 3.
    #[test]
    fn reduction_phase_exhaustive_small() {
        for p in [2u32, 3] {
            let p = m(p);
            for n in 1..=3usize {
                let pairs = n * (n - 1) / 2;
                let graphs = (p.get() as usize).pow(pairs as u32);
                let vecs = (p.get() as usize).pow(n as u32);
                for gi in 0..graphs {
                    let mut g = WeightedGraph::empty(p, n);
                    let mut code = gi;
                    for a in 0..n {
                        for b in a + 1..n {
                            g.set_edge(a, b, (code % p.get() as usize) as u32).unwrap();
                            code /= p.get() as usize;
                        }
                    }
                    let psi = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
                    for si in 0..vecs {
                        for ti in 0..vecs {
                            let s = index_vec(p, n, si);
                            let t = index_vec(p, n, ti);
                            let e = PauliError::new(s, t).unwrap();
                            let r = reduce_error(&g, &e).unwrap();
                            let lhs = dense_apply_pauli(&psi, &e).unwrap();
                            let rhs = dense_apply_pauli(&psi, &PauliError::phase_only(r.z))
                                .unwrap()
                                .scaled(r.phase);
                            assert!(lhs.max_abs_diff(&rhs) < TOL, "p={p} n={n} e={e:?}");
                        }
                    }
                }
            }
        }
    }

    fn index_vec(p: Modulus, n: usize, mut idx: usize) -> ZVec {
        let mut v = vec![0u32; n];
        for d in v.iter_mut().rev() {
            *d = (idx % p.get() as usize) as u32;
            idx /= p.get() as usize;
        }
        ZVec::from_residues(p, v).unwrap()
    }

    #[test]
    fn single_bit_shift_is_neighbour_phase_shift() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u32, 3] {
            let p = m(p);
            for _ in 0..20 {
                let n = rng.gen_range(2..=5);
                let g = random_graph(&mut rng, p, n);
                let psi = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
                for a in 0..n {
                    let xa = PauliError::new(ZVec::unit(p, n, a), ZVec::zeros(p, n)).unwrap();
                    let zs: Vec<i64> = (0..n).map(|b| -(g.weight(a, b) as i64)).collect();
                    let zb = PauliError::phase_only(ZVec::from_ints(p, &zs));
                    let lhs = dense_apply_pauli(&psi, &xa).unwrap();
                    let rhs = dense_apply_pauli(&psi, &zb).unwrap();
                    assert!(lhs.max_abs_diff(&rhs) < TOL);
                }
            }
        }
    }

    #[test]
    fn stabilizers_fix_state_up_to_eigenphase() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3] {
            let p = m(p);
            for _ in 0..30 {
                let n = rng.gen_range(1..=6);
                let g = random_graph(&mut rng, p, n);
                let s = random_vec(&mut rng, p, n);
                let psi = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
                let gs = stabilizer_element(&g, &s).unwrap();
                let lam = stabilizer_eigenphase(&g, &s).unwrap();
                let out = dense_apply_pauli(&psi, &gs).unwrap();
                assert!(out.max_abs_diff(&psi.scaled(lam)) < TOL);
            }
        }
    }

    #[test]
    fn distinct_phase_translates_are_orthogonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = m(3);
        let g = random_graph(&mut rng, p, 4);
        let psi = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
        for _ in 0..20 {
            let a = random_vec(&mut rng, p, 4);
            let b = random_vec(&mut rng, p, 4);
            let sa = dense_apply_pauli(&psi, &PauliError::phase_only(a.clone())).unwrap();
            let sb = dense_apply_pauli(&psi, &PauliError::phase_only(b.clone())).unwrap();
            let ip = sa.inner(&sb).norm();
            if a == b {
                assert!((ip - 1.0).abs() < TOL);
            } else {
                assert!(ip < TOL);
            }
        }
    }

    #[test]
    fn norms_are_one() {
        let g = star_graph(m(3), 5, 0, 1).unwrap();
        let st = dense_graph_state(&g, DENSE_CAP_DEFAULT).unwrap();
        assert!((st.norm_sqr() - 1.0).abs() < TOL);
    }
}
