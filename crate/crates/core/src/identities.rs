//! Weighted sums `sum_{j=1..k} j * F(j)^p` and the `F(k) ± 1`, `F(k)^2 ± 1`
//! factorizations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_range, Error, Result};
use crate::fibcore::{fib, fib_pair, lucas};

/// `k F(k+2) - F(k+3) + 2`, the closed form of `sum j F(j)`.
pub fn weighted_sum_linear(k: u64) -> Result<BigInt> {
    ensure_range("k", k as i64, k >= 1, "k >= 1")?;
    let pair = fib_pair(k + 2);
    Ok(BigInt::from(k) * pair.value - pair.next + 2)
}

/// `F(k) (k F(k+1) - F(k)) + tau` with `tau = 1` for odd `k`, the closed form
/// of `sum j F(j)^2`.
pub fn weighted_sum_squares(k: u64) -> Result<BigInt> {
    ensure_range("k", k as i64, k >= 1, "k >= 1")?;
    let pair = fib_pair(k);
    let tau = k % 2;
    Ok(&pair.value * (BigInt::from(k) * &pair.next - &pair.value) + tau)
}

/// Literal `sum_{j=1..k} j F(j)^p`, accumulated with [`WeightedSumState`].
pub fn weighted_power_sum(k: u64, p: u32) -> Result<BigInt> {
    ensure_range("k", k as i64, k >= 1, "k >= 1")?;
    let mut state = WeightedSumState::new(p)?;
    while state.k() < k {
        state.advance();
    }
    Ok(state.into_sum())
}

/// Running value of `sum_{j=1..k} j F(j)^p` for a fixed exponent.
///
/// Each [`advance`](Self::advance) adds exactly `(k+1) F(k+1)^p`; the
/// Fibonacci pair is walked along with it, so a step costs one power and a
/// handful of additions.
#[derive(Debug, Clone)]
pub struct WeightedSumState {
    p: u32,
    k: u64,
    sum: BigInt,
    f_k: BigInt,
    f_next: BigInt,
}

impl WeightedSumState {
    /// State at `k = 1`, where the sum is `1`.
    pub fn new(p: u32) -> Result<Self> {
        ensure_range("p", i64::from(p), p >= 1, "p >= 1")?;
        Ok(WeightedSumState {
            p,
            k: 1,
            sum: BigInt::one(),
            f_k: BigInt::one(),
            f_next: BigInt::one(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn sum(&self) -> &BigInt {
        &self.sum
    }

    pub fn into_sum(self) -> BigInt {
        self.sum
    }

    /// `F(k)` for the current `k`.
    pub fn current_fib(&self) -> &BigInt {
        &self.f_k
    }

    pub fn advance(&mut self) {
        let following = &self.f_k + &self.f_next;
        self.f_k = std::mem::replace(&mut self.f_next, following);
        self.k += 1;
        let term: BigInt = Pow::pow(&self.f_k, self.p) * self.k;
        self.sum += term;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceKind {
    Fibonacci,
    Lucas,
}

/// One sequence value named by kind and index, e.g. `L(5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub kind: SequenceKind,
    pub index: i64,
}

impl Term {
    pub fn fibonacci(index: i64) -> Self {
        Term {
            kind: SequenceKind::Fibonacci,
            index,
        }
    }

    pub fn lucas(index: i64) -> Self {
        Term {
            kind: SequenceKind::Lucas,
            index,
        }
    }

    pub fn value(&self) -> BigInt {
        match self.kind {
            SequenceKind::Fibonacci => fib(self.index),
            SequenceKind::Lucas => lucas(self.index),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            SequenceKind::Fibonacci => 'F',
            SequenceKind::Lucas => 'L',
        };
        write!(f, "{letter}_{}", self.index)
    }
}

/// A two-factor representation of some quantity, given as indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub left: Term,
    pub right: Term,
}

impl FactorizationResult {
    pub fn product(&self) -> BigInt {
        self.left.value() * self.right.value()
    }
}

impl fmt::Display for FactorizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.left, self.right)
    }
}

/// Which side of `x ± 1` is being factored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            -1 => Ok(Sign::Minus),
            1 => Ok(Sign::Plus),
            _ => Err(Error::OutOfRange {
                name: "sign",
                value: v,
                expected: "sign is -1 or +1",
            }),
        }
    }
}

/// Factors `F(k) + sign` as `F(a) L(b)`.
///
/// The branch is picked by `k mod 4`; `k >= 3` keeps every index
/// non-negative (`k = 3` gives `F(3) - 1 = F(2) L(1)`).
pub fn factor_fib_plus_minus_one(k: u64, sign: Sign) -> Result<FactorizationResult> {
    ensure_range("k", k as i64, k >= 3, "k >= 3")?;
    let k = k as i64;
    // (F index, L index) for the two half-offsets around k/2.
    let up_down = |up: i64, down: i64| FactorizationResult {
        left: Term::fibonacci(up),
        right: Term::lucas(down),
    };
    let r = match (k % 4, sign) {
        (0, Sign::Minus) | (2, Sign::Plus) => up_down((k + 2) / 2, (k - 2) / 2),
        (0, Sign::Plus) | (2, Sign::Minus) => up_down((k - 2) / 2, (k + 2) / 2),
        (1, Sign::Minus) | (3, Sign::Plus) => up_down((k - 1) / 2, (k + 1) / 2),
        (1, Sign::Plus) | (3, Sign::Minus) => up_down((k + 1) / 2, (k - 1) / 2),
        _ => unreachable!(),
    };
    Ok(r)
}

/// Factors `F(k)^2 + sign` as `F(k-1) F(k+1)` or `F(k-2) F(k+2)` depending on
/// the parity of `k`.
pub fn factor_fibsq_plus_minus_one(k: u64, sign: Sign) -> Result<FactorizationResult> {
    ensure_range("k", k as i64, k >= 2, "k >= 2")?;
    let k = k as i64;
    let odd = k % 2 == 1;
    let offset = match (odd, sign) {
        (true, Sign::Minus) | (false, Sign::Plus) => 1,
        (false, Sign::Minus) | (true, Sign::Plus) => 2,
    };
    Ok(FactorizationResult {
        left: Term::fibonacci(k - offset),
        right: Term::fibonacci(k + offset),
    })
}

/// Brute-force `sum_{j=1..k} j F(j)^p`, independent of the incremental state.
pub fn literal_power_sum(k: u64, p: u32) -> BigInt {
    (1..=k).fold(BigInt::zero(), |acc, j| {
        acc + BigInt::from(j) * Pow::pow(fib(j as i64), p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(weighted_sum_linear(3).unwrap(), int(9));
        assert_eq!(weighted_sum_linear(4).unwrap(), int(21));
        assert_eq!(weighted_sum_linear(5).unwrap(), int(1 + 2 + 6 + 12 + 25));
        assert_eq!(weighted_sum_squares(1).unwrap(), int(1));
        assert_eq!(weighted_sum_squares(2).unwrap(), int(3));
        assert_eq!(weighted_sum_squares(4).unwrap(), int(1 + 2 + 3 * 4 + 4 * 9));
        assert!(weighted_sum_linear(0).is_err());
        assert!(weighted_sum_squares(0).is_err());
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(weighted_power_sum(3, 3).unwrap(), int(27));
        assert_eq!(weighted_power_sum(1, 17).unwrap(), int(1));
        assert_eq!(weighted_power_sum(4, 2).unwrap(), int(51));
        assert!(weighted_power_sum(0, 1).is_err());
        assert!(weighted_power_sum(3, 0).is_err());
        assert!(WeightedSumState::new(0).is_err());
    }

    #[test]
    fn closed_forms_match_literal_sums() {
        for k in 1..=400 {
            assert_eq!(weighted_sum_linear(k).unwrap(), literal_power_sum(k, 1));
            assert_eq!(weighted_sum_squares(k).unwrap(), literal_power_sum(k, 2));
        }
    }

    #[test]
    fn incremental_matches_literal() {
        for p in 1..=10 {
            let mut state = WeightedSumState::new(p).unwrap();
            for k in 1..=100 {
                assert_eq!(state.k(), k);
                assert_eq!(state.sum(), &literal_power_sum(k, p), "k={k} p={p}");
                assert_eq!(state.current_fib(), &fib(k as i64));
                let before = state.sum().clone();
                state.advance();
                let step = BigInt::from(k + 1) * Pow::pow(fib(k as i64 + 1), p);
                assert_eq!(state.sum() - before, step);
            }
        }
    }

    #[test]
    fn fib_plus_minus_one_examples() {
        let r = factor_fib_plus_minus_one(8, Sign::Minus).unwrap();
        assert_eq!((r.left, r.right), (Term::fibonacci(5), Term::lucas(3)));
        assert_eq!(r.product(), int(20));
        let r = factor_fib_plus_minus_one(9, Sign::Minus).unwrap();
        assert_eq!((r.left, r.right), (Term::fibonacci(4), Term::lucas(5)));
        assert_eq!(r.product(), int(33));
        let r = factor_fib_plus_minus_one(10, Sign::Plus).unwrap();
        assert_eq!((r.left, r.right), (Term::fibonacci(6), Term::lucas(4)));
        assert_eq!(r.product(), int(56));
        let r = factor_fib_plus_minus_one(3, Sign::Minus).unwrap();
        assert_eq!(r.to_string(), "F_2*L_1");
        assert_eq!(r.product(), int(1));
        assert!(factor_fib_plus_minus_one(2, Sign::Plus).is_err());
    }

    #[test]
    fn fibsq_plus_minus_one_examples() {
        let r = factor_fibsq_plus_minus_one(5, Sign::Minus).unwrap();
        assert_eq!((r.left.index, r.right.index), (4, 6));
        assert_eq!(r.product(), int(24));
        let r = factor_fibsq_plus_minus_one(6, Sign::Minus).unwrap();
        assert_eq!((r.left.index, r.right.index), (4, 8));
        assert_eq!(r.product(), int(63));
        let r = factor_fibsq_plus_minus_one(6, Sign::Plus).unwrap();
        assert_eq!((r.left.index, r.right.index), (5, 7));
        assert_eq!(r.product(), int(65));
        assert!(factor_fibsq_plus_minus_one(1, Sign::Plus).is_err());
    }

    #[test]
    fn factorizations_hold_over_range() {
        for k in 2..=400u64 {
            for sign in Sign::BOTH {
                let fk = fib(k as i64);
                if k >= 3 {
                    let r = factor_fib_plus_minus_one(k, sign).unwrap();
                    assert_eq!(r.product(), &fk + sign.value(), "F_{k}{sign:?}1");
                }
                let r = factor_fibsq_plus_minus_one(k, sign).unwrap();
                assert_eq!(r.product(), &fk * &fk + sign.value(), "F_{k}^2{sign:?}1");
            }
        }
    }

    #[test]
    fn sign_conversion() {
        assert_eq!(Sign::try_from(-1).unwrap(), Sign::Minus);
        assert_eq!(Sign::try_from(1).unwrap(), Sign::Plus);
        assert!(Sign::try_from(0).is_err());
    }
}
