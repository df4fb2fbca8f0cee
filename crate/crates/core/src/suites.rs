//! Exhaustive identity sweeps with counterexample reporting.
//!
//! Each check walks a finite index range and stops at the first failure.
//! The suites group them the way the command line exposes them; the range of
//! every check is driven by a single `limit`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::bounds::{candidate_indices, corollary_sandwich, delta_bounds};
use crate::fibcore::{fib, lucas, FibCache};
use crate::identities::{
    factor_fib_plus_minus_one, factor_fibsq_plus_minus_one, literal_power_sum, weighted_power_sum,
    weighted_sum_linear, weighted_sum_squares, Sign,
};
use crate::modular::{
    certify_period, check_even_inverse_congruence, check_odd_inverse_congruence,
    check_square_reflection, check_square_symmetry, check_unit_square, claimed_period,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteKind {
    Identities,
    Lemmas,
    Periods,
    Bounds,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [
        SuiteKind::Identities,
        SuiteKind::Lemmas,
        SuiteKind::Periods,
        SuiteKind::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Identities => "identities",
            SuiteKind::Lemmas => "lemmas",
            SuiteKind::Periods => "periods",
            SuiteKind::Bounds => "bounds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Cases evaluated, including the failing one.
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(c) => write!(f, "FAIL {} at {c}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub limit: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn sweep<T: fmt::Debug>(
    name: &str,
    cases: impl IntoIterator<Item = T>,
    mut holds: impl FnMut(&T) -> bool,
) -> CheckOutcome {
    let mut count = 0;
    for case in cases {
        count += 1;
        if !holds(&case) {
            return CheckOutcome {
                name: name.to_string(),
                cases: count,
                counterexample: Some(format!("{case:?}")),
            };
        }
    }
    CheckOutcome {
        name: name.to_string(),
        cases: count,
        counterexample: None,
    }
}

fn pairs(lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> {
    (lo..=hi).flat_map(move |k| (lo..=hi).map(move |n| (k, n)))
}

pub fn run_suite(kind: SuiteKind, limit: u64) -> SuiteReport {
    let checks = match kind {
        SuiteKind::Identities => identities(limit),
        SuiteKind::Lemmas => lemmas(limit),
        SuiteKind::Periods => periods(limit),
        SuiteKind::Bounds => bounds(limit),
    };
    SuiteReport {
        suite: kind,
        limit,
        checks,
    }
}

pub fn identities(limit: u64) -> Vec<CheckOutcome> {
    vec![
        recurrence(limit),
        negative_indices(limit),
        linear_weighted_sum(limit),
        square_weighted_sum(limit),
        power_weighted_sum(limit.min(100), 10),
        gcd_of_fibonacci(limit),
        gcd_with_lucas(limit),
        divisibility(limit),
        docagne(limit),
        addition(limit),
        doubling(limit),
        difference_of_squares(limit),
    ]
}

pub fn lemmas(limit: u64) -> Vec<CheckOutcome> {
    vec![
        fib_plus_minus_one(limit),
        fibsq_plus_minus_one(limit),
        even_inverse_congruence(limit),
        odd_inverse_congruence(limit),
    ]
}

pub fn periods(limit: u64) -> Vec<CheckOutcome> {
    vec![
        period_certificates(limit),
        unit_square(limit),
        square_reflection(limit),
        square_symmetry(limit),
    ]
}

pub fn bounds(limit: u64) -> Vec<CheckOutcome> {
    vec![
        corollary(limit),
        delta_sandwich(20, limit),
        candidate_soundness(limit, 10),
    ]
}

/// `F(n+2) = F(n+1) + F(n)` and the same for `L`, `1 <= n <= limit`.
pub fn recurrence(limit: u64) -> CheckOutcome {
    sweep("recurrence", 1..=limit as i64, |&n| {
        fib(n + 2) == fib(n + 1) + fib(n) && lucas(n + 2) == lucas(n + 1) + lucas(n)
    })
}

/// `F(-k) = (-1)^(k+1) F(k)`, `L(-k) = (-1)^k L(k)`.
pub fn negative_indices(limit: u64) -> CheckOutcome {
    sweep("negative indices", 0..=limit as i64, |&k| {
        let odd = k % 2 == 1;
        let f = fib(k);
        let l = lucas(k);
        let f_neg = if odd { f } else { -f };
        let l_neg = if odd { -l } else { l };
        fib(-k) == f_neg && lucas(-k) == l_neg
    })
}

/// Closed form of `sum j F(j)` against the running literal sum.
pub fn linear_weighted_sum(limit: u64) -> CheckOutcome {
    let mut acc = BigInt::from(0);
    sweep("linear weighted sum", 1..=limit, |&k| {
        acc += fib(k as i64) * k;
        weighted_sum_linear(k).is_ok_and(|v| v == acc)
    })
}

/// Closed form of `sum j F(j)^2` (with the odd-`k` correction).
pub fn square_weighted_sum(limit: u64) -> CheckOutcome {
    let mut acc = BigInt::from(0);
    sweep("square weighted sum", 1..=limit, |&k| {
        let f = fib(k as i64);
        acc += &f * &f * k;
        weighted_sum_squares(k).is_ok_and(|v| v == acc)
    })
}

/// Incremental `sum j F(j)^p` against the literal summation.
pub fn power_weighted_sum(k_limit: u64, p_limit: u32) -> CheckOutcome {
    let cases = (1..=p_limit).flat_map(|p| (1..=k_limit).map(move |k| (k, p)));
    sweep("weighted power sum", cases, |&(k, p)| {
        weighted_power_sum(k, p).is_ok_and(|v| v == literal_power_sum(k, p))
    })
}

pub fn gcd_of_fibonacci(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(limit as usize);
    let f = |i: u64| cache.fib(i as usize).unwrap();
    sweep("gcd(F_k, F_n) = F_gcd(k,n)", pairs(1, limit), |&(k, n)| {
        f(k).gcd(f(n)) == *f(k.gcd(&n))
    })
}

pub fn gcd_with_lucas(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(limit as usize);
    sweep(
        "gcd(F_k, L_n) in {1, 2, L_gcd}",
        pairs(1, limit),
        |&(k, n)| {
            let g = cache
                .fib(k as usize)
                .unwrap()
                .gcd(cache.lucas(n as usize).unwrap());
            g.is_one() || g == BigInt::from(2) || g == *cache.lucas(k.gcd(&n) as usize).unwrap()
        },
    )
}

/// `F(k) | F(n)` iff `k | n`. `k = 2` is skipped: `F(2) = 1` divides every
/// `F(n)`, so the equivalence only holds for `k != 2`.
pub fn divisibility(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(limit as usize);
    let cases = pairs(1, limit).filter(|&(k, _)| k != 2);
    sweep("F_k | F_n iff k | n (k != 2)", cases, |&(k, n)| {
        let fk = cache.fib(k as usize).unwrap();
        let fn_ = cache.fib(n as usize).unwrap();
        fn_.is_multiple_of(fk) == n.is_multiple_of(k)
    })
}

/// `F(k+1) F(n) - F(k) F(n+1) = (-1)^(n+1) F(k-n)`.
pub fn docagne(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(limit as usize + 1);
    let f = |i: u64| cache.fib(i as usize).unwrap();
    sweep("d'Ocagne", pairs(1, limit), |&(k, n)| {
        let lhs = f(k + 1) * f(n) - f(k) * f(n + 1);
        let rhs = fib(k as i64 - n as i64);
        lhs == if n % 2 == 1 { rhs } else { -rhs }
    })
}

/// `F(k+n) = F(k) F(n+1) + F(k-1) F(n)` for `0 <= n <= k`.
pub fn addition(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(2 * limit as usize + 1);
    let f = |i: u64| cache.fib(i as usize).unwrap();
    let cases = (1..=limit).flat_map(|k| (0..=k).map(move |n| (k, n)));
    sweep("addition", cases, |&(k, n)| {
        *f(k + n) == f(k) * f(n + 1) + f(k - 1) * f(n)
    })
}

/// `F(2k) = F(k) L(k)`.
pub fn doubling(limit: u64) -> CheckOutcome {
    sweep("doubling", 1..=limit as i64, |&k| {
        fib(2 * k) == fib(k) * lucas(k)
    })
}

/// `F(k+n)^2 - F(k-n)^2 = F(2k) F(2n)` for `1 <= n <= k`.
///
/// The variant with `L(2n)` in place of `F(2n)` is false, already at
/// `k = n = 1`; see [`difference_of_squares_lucas_variant`].
pub fn difference_of_squares(limit: u64) -> CheckOutcome {
    let cache = FibCache::filled_to(2 * limit as usize);
    let f = |i: u64| cache.fib(i as usize).unwrap();
    let cases = (1..=limit).flat_map(|k| (1..=k).map(move |n| (k, n)));
    sweep("difference of squares", cases, |&(k, n)| {
        let a = f(k + n);
        let b = f(k - n);
        a * a - b * b == f(2 * k) * f(2 * n)
    })
}

/// `F(k+n)^2 - F(k-n)^2 = F(2k) L(2n)`. Kept to document its first
/// counterexample; it is not part of any suite.
pub fn difference_of_squares_lucas_variant(limit: u64) -> CheckOutcome {
    let cases = (1..=limit).flat_map(|k| (1..=k).map(move |n| (k, n)));
    sweep("difference of squares, L(2n) variant", cases, |&(k, n)| {
        let a = fib((k + n) as i64);
        let b = fib(k as i64 - n as i64);
        a.pow(2u32) - b.pow(2u32) == fib(2 * k as i64) * lucas(2 * n as i64)
    })
}

/// All eight `(k mod 4, sign)` branches of the `F(k) +- 1` factorization.
pub fn fib_plus_minus_one(limit: u64) -> CheckOutcome {
    let cases = (3..=limit).flat_map(|k| Sign::BOTH.map(|s| (k, s)));
    sweep("F_k +- 1 factorization", cases, |&(k, s)| {
        factor_fib_plus_minus_one(k, s).is_ok_and(|r| r.product() == fib(k as i64) + s.value())
    })
}

/// All four `(k mod 2, sign)` branches of the `F(k)^2 +- 1` factorization.
pub fn fibsq_plus_minus_one(limit: u64) -> CheckOutcome {
    let cases = (2..=limit).flat_map(|k| Sign::BOTH.map(|s| (k, s)));
    sweep("F_k^2 +- 1 factorization", cases, |&(k, s)| {
        let f = fib(k as i64);
        factor_fibsq_plus_minus_one(k, s).is_ok_and(|r| r.product() == &f * &f + s.value())
    })
}

pub fn even_inverse_congruence(limit: u64) -> CheckOutcome {
    let cases = (4..=limit).step_by(2);
    sweep("2 F_(j-1)^-1 = F_(j-3) mod F_j", cases, |&j| {
        check_even_inverse_congruence(j).unwrap_or(false)
    })
}

pub fn odd_inverse_congruence(limit: u64) -> CheckOutcome {
    let cases = (3..=limit).step_by(2);
    sweep("F_(j-1)^-1 = F_(j-2) mod F_j", cases, |&j| {
        check_odd_inverse_congruence(j).unwrap_or(false)
    })
}

/// Period `2 kappa` / `4 kappa` certified over `10 kappa` terms.
pub fn period_certificates(limit: u64) -> CheckOutcome {
    sweep("residue period 2k / 4k", 3..=limit, |&kappa| {
        certify_period(kappa, 10 * kappa)
            .is_ok_and(|c| c.holds && c.period == claimed_period(kappa))
    })
}

pub fn unit_square(limit: u64) -> CheckOutcome {
    sweep("F_(k-1)^2 = +-1 mod F_k", 3..=limit, |&kappa| {
        check_unit_square(kappa).unwrap_or(false)
    })
}

/// `F(kappa-i)^2 = F(i)^2` (even kappa, `i <= kappa/2`) or `-F(i)^2`
/// (odd kappa, `1 <= i < kappa`).
pub fn square_reflection(limit: u64) -> CheckOutcome {
    let cases = (3..=limit).flat_map(|kappa| {
        let range = if kappa % 2 == 0 {
            0..=kappa / 2
        } else {
            1..=kappa - 1
        };
        range.map(move |i| (kappa, i))
    });
    sweep("F_(k-i)^2 = +-F_i^2 mod F_k", cases, |&(kappa, i)| {
        check_square_reflection(kappa, i).unwrap_or(false)
    })
}

pub fn square_symmetry(limit: u64) -> CheckOutcome {
    let cases = (3..=limit).flat_map(|kappa| (0..kappa).map(move |j| (kappa, j)));
    sweep("F_(2k+-j)^2 = F_j^2 mod F_k", cases, |&(kappa, j)| {
        check_square_symmetry(kappa, j).unwrap_or(false)
    })
}

/// `alpha^(k-2) <= F(k) <= alpha^(k-1)`, with equality only at `k = 2`
/// (lower) and `k = 1` (upper).
pub fn corollary(limit: u64) -> CheckOutcome {
    sweep("alpha^(k-2) <= F_k <= alpha^(k-1)", 1..=limit, |&k| {
        let s = corollary_sandwich(k);
        let lower_ok = if k == 2 {
            s.lower == Ordering::Equal
        } else {
            s.lower == Ordering::Less
        };
        let upper_ok = if k == 1 {
            s.upper == Ordering::Equal
        } else {
            s.upper == Ordering::Less
        };
        lower_ok && upper_ok
    })
}

/// `alpha^(k+delta0) <= F(k) <= alpha^(k+delta1)` for `k0 <= k <= limit`.
pub fn delta_sandwich(k0_limit: u64, limit: u64) -> CheckOutcome {
    let cases = (1..=k0_limit).flat_map(|k0| (k0..=limit).map(move |k| (k0, k)));
    sweep("alpha^(k+d0) <= F_k <= alpha^(k+d1)", cases, |&(k0, k)| {
        delta_bounds(k0).sandwich(k).holds()
    })
}

/// `candidate_indices(F(n)^q, q)` contains `n` and has at most 4 entries.
pub fn candidate_soundness(n_limit: u64, q_limit: u32) -> CheckOutcome {
    let cases = (1..=n_limit).flat_map(|n| (1..=q_limit).map(move |q| (n, q)));
    sweep("candidate index soundness", cases, |&(n, q)| {
        let s = Pow::pow(fib(n as i64), q);
        let c = candidate_indices(&s, q);
        c.candidates.contains(&n) && c.candidates.len() <= 4
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for kind in SuiteKind::ALL {
            let report = run_suite(kind, 30);
            assert!(report.passed(), "{:?}", report.first_failure());
            assert!(report.checks.iter().all(|c| c.cases > 0));
        }
    }

    #[test]
    fn divisibility_exception_at_two() {
        // F(2) = F(1) = 1, yet 2 does not divide 1.
        assert_eq!(fib(2), fib(1));
        assert!(divisibility(60).passed());
    }

    #[test]
    fn lucas_variant_of_difference_of_squares_fails() {
        // F(2)^2 - F(0)^2 = 1 but F(2) L(2) = 3.
        let out = difference_of_squares_lucas_variant(10);
        assert_eq!(out.counterexample.as_deref(), Some("(1, 1)"));
        assert!(difference_of_squares(150).passed());
    }

    #[test]
    fn sweep_reports_first_counterexample() {
        let out = sweep("evens", 1..=10, |&n| n < 7);
        assert_eq!(out.counterexample.as_deref(), Some("7"));
        assert_eq!(out.cases, 7);
        assert!(out.to_string().starts_with("FAIL evens"));
    }
}
