//! Exact arithmetic over the ring `Z_p` for prime `p`.
//!
//! Everything that carries an exponent in this crate (bit-shift and
//! phase-shift exponents, clique vectors, adjacency weights) is a [`ZVec`]
//! or [`ZMat`] over a [`Modulus`]. Entries are always stored as canonical
//! residues in `[0, p)`.
//!
//! Halved quadratic forms `½ s·Γ·s` are evaluated as the unordered pair sum
//! `Σ_{a<b} Γ_ab s_a s_b`, which is what the `½` means for a symmetric
//! zero-diagonal `Γ`. No inverse of 2 is ever taken, so `p = 2` behaves
//! exactly like odd primes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut k = 2u32;
        while (k as u64) * (k as u64) <= p as u64 {
            if p % k == 0 {
                return Err(Error::NotPrime(p));
            }
            k += 1;
        }
        Ok(Modulus(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> Option<u32> {
        if a % self.0 == 0 {
            return None;
        }
        Some(self.pow(a, self.0 - 2))
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn check(self, value: u32) -> Result<u32> {
        if value < self.0 {
            Ok(value)
        } else {
            Err(Error::ResidueOutOfRange { value, p: self.0 })
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u32::deserialize(d)?;
        Modulus::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A power of `ω_p = exp(2πi/p)`, stored as its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhaseExp(u32);

impl PhaseExp {
    pub fn new(modulus: Modulus, exponent: i64) -> Self {
        PhaseExp(modulus.reduce(exponent))
    }

    pub fn zero() -> Self {
        PhaseExp(0)
    }

    pub fn exponent(self) -> u32 {
        self.0
    }
}

/// A length-`n` vector over `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZVec {
    entries: Vec<u32>,
    modulus: Modulus,
}

impl ZVec {
    pub fn zeros(modulus: Modulus, n: usize) -> Self {
        ZVec {
            entries: vec![0; n],
            modulus,
        }
    }

    /// Builds a vector from residues, rejecting anything outside `[0, p)`.
    pub fn from_residues(modulus: Modulus, entries: Vec<u32>) -> Result<Self> {
        for &e in &entries {
            modulus.check(e)?;
        }
        Ok(ZVec { entries, modulus })
    }

    /// Builds a vector from arbitrary integers, reducing each mod `p`.
    pub fn from_ints(modulus: Modulus, entries: &[i64]) -> Self {
        ZVec {
            entries: entries.iter().map(|&x| modulus.reduce(x)).collect(),
            modulus,
        }
    }

    /// Parses a digit string such as `"12220"`. Only meaningful for `p <= 10`.
    pub fn from_digits(modulus: Modulus, digits: &str) -> Result<Self> {
        let entries = digits
            .chars()
            .map(|c| {
                let v = c
                    .to_digit(10)
                    .ok_or_else(|| Error::InvalidParameters(format!("bad digit {c:?}")))?;
                modulus.check(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZVec { entries, modulus })
    }

    pub fn unit(modulus: Modulus, n: usize, index: usize) -> Self {
        let mut v = ZVec::zeros(modulus, n);
        v.entries[index] = 1 % modulus.get();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u32) -> Result<()> {
        self.entries[i] = self.modulus.check(value)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn compatible(&self, other: &ZVec) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &ZVec, f: impl Fn(u32, u32) -> u32) -> Result<ZVec> {
        self.compatible(other)?;
        Ok(ZVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            modulus: self.modulus,
        })
    }

    pub fn add(&self, other: &ZVec) -> Result<ZVec> {
        let m = self.modulus;
        self.zip_with(other, |a, b| m.add(a, b))
    }

    pub fn sub(&self, other: &ZVec) -> Result<ZVec> {
        let m = self.modulus;
        self.zip_with(other, |a, b| m.sub(a, b))
    }

    pub fn neg(&self) -> ZVec {
        let m = self.modulus;
        ZVec {
            entries: self.entries.iter().map(|&a| m.neg(a)).collect(),
            modulus: m,
        }
    }

    pub fn scale(&self, k: u32) -> ZVec {
        let m = self.modulus;
        ZVec {
            entries: self.entries.iter().map(|&a| m.mul(a, k % m.get())).collect(),
            modulus: m,
        }
    }

    /// `Σ a_i b_i mod p`.
    pub fn dot(&self, other: &ZVec) -> Result<u32> {
        self.compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &ZVec) -> u32 {
        let p = self.modulus.get() as u64;
        let s: u64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a as u64 * b as u64 % p)
            .sum();
        (s % p) as u32
    }

    /// Indices with a nonzero entry.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.entries
    }

    /// Digit string for `p <= 10`, comma-separated residues otherwise.
    pub fn to_digit_string(&self) -> String {
        if self.modulus.get() <= 10 {
            self.entries
                .iter()
                .map(|&e| char::from_digit(e, 10).unwrap())
                .collect()
        } else {
            self.entries
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Concatenation `self ⊗ other` in subsystem order.
    pub fn concat(&self, other: &ZVec) -> Result<ZVec> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ZVec {
            entries,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for ZVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string())
    }
}

/// Square matrix over `Z_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZMat {
    n: usize,
    entries: Vec<u32>,
    modulus: Modulus,
}

impl ZMat {
    pub fn zeros(modulus: Modulus, n: usize) -> Self {
        ZMat {
            n,
            entries: vec![0; n * n],
            modulus,
        }
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut m = ZMat::zeros(modulus, n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            for (b, &v) in row.iter().enumerate() {
                m.entries[a * n + b] = modulus.check(v)?;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.entries[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: u32) -> Result<()> {
        self.entries[a * self.n + b] = self.modulus.check(value)?;
        Ok(())
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.entries[a * self.n..(a + 1) * self.n]
    }

    pub fn is_symmetric_zero_diagonal(&self) -> bool {
        (0..self.n).all(|a| {
            self.get(a, a) == 0 && (a + 1..self.n).all(|b| self.get(a, b) == self.get(b, a))
        })
    }

    /// Row-vector product `s·Γ`: `(s·Γ)_b = Σ_a s_a Γ_ab`.
    pub fn left_mul(&self, s: &ZVec) -> Result<ZVec> {
        if s.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: s.modulus().get(),
            });
        }
        if s.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: s.len(),
            });
        }
        Ok(self.left_mul_unchecked(s))
    }

    pub(crate) fn left_mul_unchecked(&self, s: &ZVec) -> ZVec {
        let p = self.modulus.get() as u64;
        let mut acc = vec![0u64; self.n];
        for (a, &sa) in s.entries().iter().enumerate() {
            if sa == 0 {
                continue;
            }
            for (b, &g) in self.row(a).iter().enumerate() {
                acc[b] += sa as u64 * g as u64;
            }
        }
        ZVec {
            entries: acc.into_iter().map(|x| (x % p) as u32).collect(),
            modulus: self.modulus,
        }
    }

    /// `½ s·Γ·s` as the unordered pair sum `Σ_{a<b} Γ_ab s_a s_b`.
    pub fn quad_form_half(&self, s: &ZVec) -> Result<PhaseExp> {
        if !self.is_symmetric_zero_diagonal() {
            return Err(Error::InvalidGraph(
                "adjacency must be symmetric with zero diagonal".into(),
            ));
        }
        if s.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: s.len(),
            });
        }
        if s.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: s.modulus().get(),
            });
        }
        Ok(PhaseExp(self.pair_sum(s.entries())))
    }

    pub(crate) fn pair_sum(&self, s: &[u32]) -> u32 {
        let p = self.modulus.get() as u64;
        let mut acc = 0u64;
        for a in 0..self.n {
            if s[a] == 0 {
                continue;
            }
            for b in a + 1..self.n {
                let g = self.get(a, b);
                if g != 0 && s[b] != 0 {
                    acc = (acc + g as u64 * s[a] as u64 % p * s[b] as u64) % p;
                }
            }
        }
        acc as u32
    }
}
