//! Exponential growth bounds for `F(k)` and their inversion into candidate
//! indices.
//!
//! With `alpha = (1 + sqrt 5) / 2` every power has the exact form
//! `alpha^m = (L(m) + F(m) sqrt 5) / 2`, for negative `m` as well. The
//! inequality checks below therefore reduce to the sign of an element
//! `a + b sqrt 5` with integer `a`, `b`, which is decided without rounding.
//! Floating point is used only to report the `delta` exponents and to place
//! the candidate window; every candidate is later confirmed exactly.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::fibcore::{fib, lucas};

/// `ln(alpha)`.
pub const LN_ALPHA: f64 = 0.481_211_825_059_603_4;

/// `log_alpha(sqrt 5)`.
pub const LOG_ALPHA_SQRT5: f64 = 1.672_275_938_184_554_7;

/// Absolute widening applied to the reported `delta` exponents.
const DELTA_ROUNDING: f64 = 1e-12;

/// Sign of `a + b sqrt 5`.
pub fn sign_sqrt5(a: &BigInt, b: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    match (sa, sb) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::Minus, Sign::Minus) | (Sign::Minus, Sign::NoSign) | (Sign::NoSign, Sign::Minus) => {
            Ordering::Less
        }
        (Sign::Plus, Sign::Plus) | (Sign::Plus, Sign::NoSign) | (Sign::NoSign, Sign::Plus) => {
            Ordering::Greater
        }
        _ => {
            let a2 = a * a;
            let b2 = b * b * 5;
            if sa == Sign::Plus {
                a2.cmp(&b2)
            } else {
                b2.cmp(&a2)
            }
        }
    }
}

/// `alpha^m` as the pair `(L(m), F(m))`, meaning `(L(m) + F(m) sqrt 5) / 2`.
fn alpha_power(m: i64) -> (BigInt, BigInt) {
    (lucas(m), fib(m))
}

/// The exponents `delta0 < delta1` with
/// `alpha^(k + delta0) <= F(k) <= alpha^(k + delta1)` for all `k >= k0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEstimate {
    pub k0: u64,
    /// `log_alpha((1 - alpha^(-2 k0)) / sqrt 5)`, rounded down.
    pub delta0: f64,
    /// `log_alpha((1 + alpha^(-2 k0)) / sqrt 5)`, rounded up.
    pub delta1: f64,
}

/// Outcome of an exact two-sided comparison `lower <= F(k) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sandwich {
    /// `lower.cmp(F(k))`
    pub lower: Ordering,
    /// `F(k).cmp(upper)`
    pub upper: Ordering,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower != Ordering::Greater && self.upper != Ordering::Greater
    }
}

pub fn delta_bounds(k0: u64) -> BoundEstimate {
    let k0 = k0.max(1);
    // (|beta| / alpha)^k0 = alpha^(-2 k0)
    let ratio = (-2.0 * k0 as f64 * LN_ALPHA).exp();
    let delta = |signed_ratio: f64| signed_ratio.ln_1p() / LN_ALPHA - LOG_ALPHA_SQRT5;
    BoundEstimate {
        k0,
        delta0: delta(-ratio) - DELTA_ROUNDING,
        delta1: delta(ratio) + DELTA_ROUNDING,
    }
}

impl BoundEstimate {
    /// Exact comparison of `alpha^(k + delta_i)` against `F(k)`.
    ///
    /// `sqrt 5 * alpha^(k + delta_i) = alpha^k -+ alpha^(k - 2 k0)`, so both
    /// sides live in `Z[sqrt 5] / 2`.
    pub fn sandwich(&self, k: u64) -> Sandwich {
        let k = k as i64;
        let shifted = k - 2 * self.k0 as i64;
        let (lk, fk) = alpha_power(k);
        let (ls, fs) = alpha_power(shifted);
        let f = fib(k);
        // 2 (sqrt5 F(k) - alpha^k + alpha^shifted)
        let lower_gap = sign_sqrt5(&(&ls - &lk), &(&f * 2 - &fk + &fs));
        // 2 (alpha^k + alpha^shifted - sqrt5 F(k))
        let upper_gap = sign_sqrt5(&(&lk + &ls), &(&fk + &fs - &f * 2));
        Sandwich {
            lower: lower_gap.reverse(),
            upper: upper_gap.reverse(),
        }
    }
}

/// Exact comparison `alpha^(k-2) <= F(k) <= alpha^(k-1)`.
pub fn corollary_sandwich(k: u64) -> Sandwich {
    let k = k as i64;
    let f = fib(k);
    let (l2, f2) = alpha_power(k - 2);
    let (l1, f1) = alpha_power(k - 1);
    // 2 (F(k) - alpha^(k-2))
    let lower_gap = sign_sqrt5(&(&f * 2 - l2), &-f2);
    // 2 (alpha^(k-1) - F(k))
    let upper_gap = sign_sqrt5(&(l1 - &f * 2), &f1);
    Sandwich {
        lower: lower_gap.reverse(),
        upper: upper_gap.reverse(),
    }
}

/// `true` iff `alpha^(k-2) <= F(k) <= alpha^(k-1)`.
pub fn check_corollary(k: u64) -> bool {
    k >= 1 && corollary_sandwich(k).holds()
}

/// Natural logarithm of a positive big integer.
pub fn ln_magnitude(s: &BigInt) -> f64 {
    debug_assert!(s.is_positive());
    let bits = s.bits();
    if bits <= 1000 {
        return s.to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = bits - 64;
    let top = (s >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// The indices `n >= 1` that can satisfy `F(n)^q = S`, where `ln_s = ln S`.
///
/// `F(n) = S^(1/q)` and the delta bounds for `k0 = 1` place `n` inside
/// `[x - delta1, x - delta0]` with `x = log_alpha S / q`. One index of slack
/// is added on each side, which keeps the window at most four wide.
pub fn candidate_range(ln_s: f64, q: u32) -> RangeInclusive<u64> {
    const BASE: BoundEstimate = BoundEstimate {
        k0: 1,
        delta0: -1.0 - LOG_ALPHA_SQRT5 - DELTA_ROUNDING,
        delta1: -1.0 + DELTA_ROUNDING,
    };
    let x = ln_s / (f64::from(q) * LN_ALPHA);
    let lo = (x - BASE.delta1 - 1.0).ceil().max(1.0);
    let hi = (x - BASE.delta0 + 1.0).floor().max(0.0);
    lo as u64..=hi as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCandidates {
    pub target_magnitude: BigInt,
    pub q: u32,
    pub candidates: Vec<u64>,
}

/// Every `n` for which `F(n)^q` could equal `s`. The list is only a filter:
/// membership says nothing until `F(n)^q` is compared exactly.
pub fn candidate_indices(s: &BigInt, q: u32) -> IndexCandidates {
    let candidates = if s.is_one() {
        vec![1, 2]
    } else if !s.is_positive() || q == 0 {
        Vec::new()
    } else {
        candidate_range(ln_magnitude(s), q).collect()
    };
    IndexCandidates {
        target_magnitude: s.clone(),
        q,
        candidates,
    }
}

impl IndexCandidates {
    /// Candidates `n` with `F(n)^q` exactly equal to the target.
    pub fn confirmed(&self) -> Vec<u64> {
        self.candidates
            .iter()
            .copied()
            .filter(|&n| num_traits::Pow::pow(fib(n as i64), self.q) == self.target_magnitude)
            .collect()
    }
}
