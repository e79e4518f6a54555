//! Singleton bound for codes over `p²`-level channels with `e` noiseless and
//! `e'` half-noisy channels next to `n` fully noisy ones.
//!
//! ```text
//! n < 2(d−1) − e'            infeasible
//! 2(d−1) > n ≥ 2(d−1) − e'   K ≤ p^{n + 2e + 2e' − 2(d−1)}
//! n ≥ 2(d−1)                 K ≤ p^{2n + 2e + 2e' − 4(d−1)}
//! ```
//!
//! Everything is exact integer arithmetic.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::code_space::CodeSpec;
use crate::error::{Error, Result};
use crate::noise::ChannelKind;
use crate::zp::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub p: Modulus,
    pub n: usize,
    pub d: usize,
    pub e: usize,
    pub e_half: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Enhanced,
    Standard,
    Infeasible,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Enhanced => "enhanced",
            Regime::Standard => "standard",
            Regime::Infeasible => "infeasible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub regime: Regime,
    /// `K_max = p^exponent`; `None` when infeasible.
    pub exponent: Option<u64>,
    /// 0 when infeasible.
    pub k_max: BigUint,
}

/// `n + 2e + 2e' − 2(d−1)`, unclamped.
pub fn enhanced_exponent(n: usize, d: usize, e: usize, e_half: usize) -> i64 {
    n as i64 + 2 * e as i64 + 2 * e_half as i64 - 2 * (d as i64 - 1)
}

/// `2n + 2e + 2e' − 4(d−1)`, unclamped.
pub fn standard_exponent(n: usize, d: usize, e: usize, e_half: usize) -> i64 {
    2 * n as i64 + 2 * e as i64 + 2 * e_half as i64 - 4 * (d as i64 - 1)
}

pub fn singleton_bound(q: &BoundQuery) -> Result<BoundResult> {
    if q.d == 0 {
        return Err(Error::InvalidParameters("distance must be at least 1".into()));
    }
    let two_d = 2 * (q.d - 1);
    let (regime, exp) = if q.n + q.e_half < two_d {
        (Regime::Infeasible, None)
    } else if q.n < two_d {
        (Regime::Enhanced, Some(enhanced_exponent(q.n, q.d, q.e, q.e_half)))
    } else {
        (Regime::Standard, Some(standard_exponent(q.n, q.d, q.e, q.e_half)))
    };
    let exponent = exp.map(|x| {
        debug_assert!(x >= 0);
        x as u64
    });
    let k_max = match exponent {
        Some(x) => {
            let x = u32::try_from(x)
                .map_err(|_| Error::InvalidParameters(format!("exponent {x} is too large")))?;
            BigUint::from(q.p.get()).pow(x)
        }
        None => BigUint::from(0u32),
    };
    Ok(BoundResult {
        regime,
        exponent,
        k_max,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioComparison {
    pub a: BoundResult,
    pub b: BoundResult,
    /// `K_a / K_b = p^ratio_exponent`; `None` if either side is infeasible.
    pub ratio_exponent: Option<i64>,
}

/// Bounds for two ways of splitting `total_channels` into noisy, noiseless
/// (`e`) and half-noisy (`e'`) channels.
pub fn compare_scenarios(
    p: Modulus,
    d: usize,
    total_channels: usize,
    split_a: (usize, usize),
    split_b: (usize, usize),
) -> Result<ScenarioComparison> {
    let eval = |(e, e_half): (usize, usize)| {
        let n = total_channels.checked_sub(e + e_half).ok_or_else(|| {
            Error::InvalidParameters(format!(
                "{e} noiseless and {e_half} half-noisy channels exceed {total_channels} channels"
            ))
        })?;
        singleton_bound(&BoundQuery { p, n, d, e, e_half })
    };
    let a = eval(split_a)?;
    let b = eval(split_b)?;
    let ratio_exponent = match (a.exponent, b.exponent) {
        (Some(x), Some(y)) => Some(x as i64 - y as i64),
        _ => None,
    };
    Ok(ScenarioComparison {
        a,
        b,
        ratio_exponent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundCheck {
    Applicable {
        query: BoundQuery,
        bound: BoundResult,
        k: usize,
        within: bool,
        saturated: bool,
        /// `log_p(K_max / K)` when `K` is a power of `p`.
        margin: Option<i64>,
    },
    /// The layout is not a uniform set of `p²`-level channels.
    NotApplicable(String),
}

impl BoundCheck {
    pub fn within(&self) -> Option<bool> {
        match self {
            BoundCheck::Applicable { within, .. } => Some(*within),
            BoundCheck::NotApplicable(_) => None,
        }
    }

    pub fn margin(&self) -> Option<i64> {
        match self {
            BoundCheck::Applicable { margin, .. } => *margin,
            BoundCheck::NotApplicable(_) => None,
        }
    }
}

/// Reads `(n, e, e')` off a layout made only of two-vertex channels.
pub fn query_for(spec: &CodeSpec) -> std::result::Result<BoundQuery, String> {
    let layout = &spec.layout;
    let (mut n, mut e, mut e_half) = (0, 0, 0);
    for (ci, ch) in layout.channels().iter().enumerate() {
        if ch.len() != 2 {
            return Err(format!("channel {ci} has {} sub-qudits, not 2", ch.len()));
        }
        match layout.kind(ci) {
            ChannelKind::Noisy => n += 1,
            ChannelKind::HalfNoisy => e_half += 1,
            ChannelKind::Noiseless => e += 1,
            ChannelKind::PartialNoisy => unreachable!("a two-vertex channel is never partial"),
        }
    }
    Ok(BoundQuery {
        p: spec.modulus(),
        n,
        d: spec.d,
        e,
        e_half,
    })
}

pub fn check_against_bound(spec: &CodeSpec) -> BoundCheck {
    let query = match query_for(spec) {
        Ok(q) => q,
        Err(why) => return BoundCheck::NotApplicable(why),
    };
    // d ≥ 1 is guaranteed by CodeSpec
    let bound = singleton_bound(&query).unwrap();
    let k = spec.k();
    let kb = BigUint::from(k);
    let margin = exact_log(query.p.get() as usize, k)
        .and_then(|m| bound.exponent.map(|x| x as i64 - m as i64));
    BoundCheck::Applicable {
        query,
        within: kb <= bound.k_max,
        saturated: kb == bound.k_max,
        bound,
        k,
        margin,
    }
}

fn exact_log(p: usize, mut k: usize) -> Option<u32> {
    let mut m = 0;
    while k > 1 {
        if k % p != 0 {
            return None;
        }
        k /= p;
        m += 1;
    }
    (k == 1).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u32, n: usize, d: usize, e: usize, e_half: usize) -> BoundQuery {
        BoundQuery {
            p: Modulus::new(p).unwrap(),
            n,
            d,
            e,
            e_half,
        }
    }

    #[test]
    fn spec_values() {
        let r = singleton_bound(&q(3, 4, 3, 1, 0)).unwrap();
        assert_eq!(r.k_max, BigUint::from(9u32));
        assert_eq!(r.regime, Regime::Standard);
        let r = singleton_bound(&q(3, 3, 3, 0, 2)).unwrap();
        assert_eq!(r.k_max, BigUint::from(27u32));
        assert_eq!(r.regime, Regime::Enhanced);
        let r = singleton_bound(&q(5, 2, 1, 1, 1)).unwrap();
        assert_eq!(r.exponent, Some(8));
        assert_eq!(r.regime, Regime::Standard);
        let r = singleton_bound(&q(2, 1, 3, 0, 2)).unwrap();
        assert_eq!(r.regime, Regime::Infeasible);
        assert_eq!(r.k_max, BigUint::from(0u32));
        assert!(singleton_bound(&q(2, 1, 0, 0, 0)).is_err());
    }

    #[test]
    fn scenario_comparisons() {
        let p = Modulus::new(3).unwrap();
        let c = compare_scenarios(p, 3, 5, (0, 2), (1, 0)).unwrap();
        assert_eq!(c.a.k_max, BigUint::from(27u32));
        assert_eq!(c.b.k_max, BigUint::from(9u32));
        assert_eq!(c.ratio_exponent, Some(1));
        assert_eq!(compare_scenarios(p, 3, 5, (1, 1), (1, 1)).unwrap().ratio_exponent, Some(0));
        let p2 = Modulus::new(2).unwrap();
        let c = compare_scenarios(p2, 3, 9, (0, 1), (1, 0)).unwrap();
        assert_eq!((c.a.regime, c.b.regime), (Regime::Standard, Regime::Standard));
        assert_eq!(c.ratio_exponent, Some(0));
        assert!(compare_scenarios(p, 3, 2, (2, 1), (0, 0)).is_err());
    }

    #[test]
    fn grid_continuity_and_monotonicity() {
        let mut points = 0;
        for p in [2, 3, 5] {
            for d in 1..=6 {
                for n in 0..=12 {
                    for e in 0..=4 {
                        for eh in 0..=4 {
                            points += 1;
                            let base = singleton_bound(&q(p, n, d, e, eh)).unwrap();
                            if n == 2 * (d - 1) {
                                assert_eq!(enhanced_exponent(n, d, e, eh), standard_exponent(n, d, e, eh));
                            }
                            let up_e = singleton_bound(&q(p, n, d, e + 1, eh)).unwrap();
                            assert_eq!(up_e.regime, base.regime);
                            if let Some(x) = base.exponent {
                                assert_eq!(up_e.exponent, Some(x + 2));
                            }
                            let up_h = singleton_bound(&q(p, n, d, e, eh + 1)).unwrap();
                            if up_h.regime == base.regime {
                                if let Some(x) = base.exponent {
                                    assert_eq!(up_h.exponent, Some(x + 2));
                                }
                            }
                            if eh == 0 {
                                assert_ne!(base.regime, Regime::Enhanced);
                            }
                            if e == 0 && eh == 0 && base.regime == Regime::Standard {
                                assert_eq!(base.exponent, Some(2 * (n - 2 * (d - 1)) as u64));
                            }
                        }
                    }
                }
            }
        }
        assert!(points >= 1000);
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(3, 27), Some(3));
        assert_eq!(exact_log(3, 1), Some(0));
        assert_eq!(exact_log(2, 6), None);
    }
}
