//! Residues of `F(u)` and `F(u)^2` modulo a Fibonacci number `F(kappa)`.
//!
//! Residues are always least non-negative representatives in `[0, F(kappa))`.
//! A negative representative such as `-F(j)` is compared by reducing it with
//! [`normalize`] first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_range, Error, Result};
use crate::fibcore::{fib, fib_mod};

/// Reduces `x` into `[0, m)`.
pub fn normalize(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSequence {
    pub kappa: u64,
    pub squared: bool,
    pub modulus: BigInt,
    pub residues: Vec<BigInt>,
}

/// The first `length` terms of `F(u) mod F(kappa)` (or `F(u)^2` when
/// `squared`).
pub fn residue_sequence(kappa: u64, squared: bool, length: usize) -> Result<ResidueSequence> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    ensure_range("length", length as i64, length >= 1, "length >= 1")?;
    let modulus = fib(kappa as i64);
    let residues = fib_residues(&modulus, length)
        .into_iter()
        .map(|r| if squared { (&r * &r) % &modulus } else { r })
        .collect();
    Ok(ResidueSequence {
        kappa,
        squared,
        modulus,
        residues,
    })
}

fn fib_residues(m: &BigInt, length: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(length);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one() % m);
    for _ in 0..length {
        let c = (&a + &b) % m;
        out.push(std::mem::replace(&mut a, std::mem::replace(&mut b, c)));
    }
    out
}

/// `2 kappa` for even `kappa`, `4 kappa` for odd `kappa`.
///
/// This is a period of `F(u) mod F(kappa)`, not necessarily the minimal one.
pub fn claimed_period(kappa: u64) -> u64 {
    if kappa.is_multiple_of(2) {
        2 * kappa
    } else {
        4 * kappa
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub kappa: u64,
    pub modulus: BigInt,
    pub period: u64,
    pub checked_up_to: u64,
    pub holds: bool,
    /// First `u` where `F(u + period)` and `F(u)` differ, if any.
    pub first_failure: Option<u64>,
}

/// Checks `F(u + P) = F(u) (mod F(kappa))` for every `0 <= u <= checked_up_to`,
/// with `P` from [`claimed_period`].
pub fn certify_period(kappa: u64, checked_up_to: u64) -> Result<PeriodCertificate> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    let period = claimed_period(kappa);
    if checked_up_to < period {
        return Err(Error::RangeTooShort {
            checked_up_to,
            period,
        });
    }
    let modulus = fib(kappa as i64);
    let residues = fib_residues(&modulus, (checked_up_to + period + 1) as usize);
    let p = period as usize;
    let first_failure = (0..=checked_up_to as usize)
        .find(|&u| residues[u] != residues[u + p])
        .map(|u| u as u64);
    Ok(PeriodCertificate {
        kappa,
        modulus,
        period,
        checked_up_to,
        holds: first_failure.is_none(),
        first_failure,
    })
}

/// Smallest `P > 0` with `(F(P), F(P+1)) = (0, 1) mod F(kappa)`.
///
/// The search is bounded by [`claimed_period`], which is always a period.
pub fn minimal_period(kappa: u64) -> Result<u64> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    let bound = claimed_period(kappa);
    let modulus = fib(kappa as i64);
    let residues = fib_residues(&modulus, bound as usize + 2);
    let one = BigInt::one();
    Ok((1..=bound as usize)
        .find(|&u| residues[u].is_zero() && residues[u + 1] == one)
        .unwrap_or(bound as usize) as u64)
}

/// `x` in `[1, m)` with `a x = 1 (mod m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *m <= BigInt::one() {
        return Err(Error::ModulusTooSmall(m.clone()));
    }
    // Invariant: r_i = s_i * a (mod m).
    let (mut r0, mut r1) = (m.clone(), normalize(a, m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, rem);
        let s2 = &s0 - &quot * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if !r0.is_one() {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: m.clone(),
        });
    }
    Ok(normalize(&s0, m))
}

/// For even `j >= 4`: `2 F(j-1)^(-1) = F(j-3) (mod F(j))`.
pub fn check_even_inverse_congruence(j: u64) -> Result<bool> {
    ensure_range("j", j as i64, j >= 4 && j.is_multiple_of(2), "even j >= 4")?;
    let j = j as i64;
    let m = fib(j);
    let inv = mod_inverse(&fib(j - 1), &m)?;
    Ok(normalize(&(inv * 2), &m) == normalize(&fib(j - 3), &m))
}

/// For odd `j >= 3`: `F(j-1)^(-1) = F(j-2) (mod F(j))`.
pub fn check_odd_inverse_congruence(j: u64) -> Result<bool> {
    ensure_range("j", j as i64, j >= 3 && j % 2 == 1, "odd j >= 3")?;
    let j = j as i64;
    let m = fib(j);
    let inv = mod_inverse(&fib(j - 1), &m)?;
    Ok(inv == normalize(&fib(j - 2), &m))
}

/// `F(kappa-1)^2 = (-1)^kappa (mod F(kappa))`.
pub fn check_unit_square(kappa: u64) -> Result<bool> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    let m = fib(kappa as i64);
    let f = fib_mod(kappa - 1, &m)?;
    let expected = if kappa.is_multiple_of(2) { 1 } else { -1 };
    Ok(normalize(&(&f * &f), &m) == normalize(&BigInt::from(expected), &m))
}

/// `F(kappa-i)^2 = (-1)^kappa F(i)^2 (mod F(kappa))` for `0 <= i <= kappa`.
pub fn check_square_reflection(kappa: u64, i: u64) -> Result<bool> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    ensure_range("i", i as i64, i <= kappa, "0 <= i <= kappa")?;
    let m = fib(kappa as i64);
    let a = fib_mod(kappa - i, &m)?;
    let b = fib_mod(i, &m)?;
    let rhs = if kappa.is_multiple_of(2) {
        &b * &b
    } else {
        -(&b * &b)
    };
    Ok(normalize(&(&a * &a), &m) == normalize(&rhs, &m))
}

/// `F(2 kappa + j)^2 = F(2 kappa - j)^2 = F(j)^2 (mod F(kappa))` for
/// `0 <= j < kappa`.
pub fn check_square_symmetry(kappa: u64, j: u64) -> Result<bool> {
    ensure_range("kappa", kappa as i64, kappa >= 3, "kappa >= 3")?;
    ensure_range("j", j as i64, j < kappa, "0 <= j < kappa")?;
    let m = fib(kappa as i64);
    let sq = |u: u64| -> Result<BigInt> {
        let r = fib_mod(u, &m)?;
        Ok((&r * &r) % &m)
    };
    let base = sq(j)?;
    Ok(sq(2 * kappa + j)? == base && sq(2 * kappa - j)? == base)
}

/// `true` when `gcd(a, m) = 1`; used by callers choosing inputs for
/// [`mod_inverse`].
pub fn is_coprime(a: &BigInt, m: &BigInt) -> bool {
    a.abs().gcd(m).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn residue_examples() {
        let s = residue_sequence(5, false, 6).unwrap();
        assert_eq!(s.residues, [0, 1, 1, 2, 3, 0].map(int));
        let s = residue_sequence(8, false, 17).unwrap();
        assert_eq!(s.modulus, int(21));
        assert_eq!(s.residues[16], s.residues[0]);
        assert!(s.residues[16].is_zero());
        let s = residue_sequence(6, true, 13).unwrap();
        assert_eq!(s.residues[12], int(0));
        for (u, r) in s.residues.iter().enumerate() {
            let f = fib(u as i64);
            assert_eq!(r, &((&f * &f) % 8));
        }
        assert!(residue_sequence(2, false, 5).is_err());
        assert!(residue_sequence(5, false, 0).is_err());
    }

    #[test]
    fn period_examples() {
        let c = certify_period(8, 200).unwrap();
        assert_eq!((c.period, c.holds), (16, true));
        let c = certify_period(9, 200).unwrap();
        assert_eq!((c.period, c.holds), (36, true));
        let c = certify_period(4, 200).unwrap();
        assert_eq!((c.period, c.holds, c.modulus.clone()), (8, true, int(3)));
        assert_eq!(
            certify_period(9, 35),
            Err(Error::RangeTooShort {
                checked_up_to: 35,
                period: 36
            })
        );
        assert!(certify_period(2, 100).is_err());
    }

    #[test]
    fn period_agrees_with_fib_mod() {
        for kappa in 3..=30u64 {
            let m = fib(kappa as i64);
            let p = claimed_period(kappa);
            for u in 0..=5 * kappa {
                assert_eq!(fib_mod(u + p, &m).unwrap(), fib_mod(u, &m).unwrap());
            }
            assert!(certify_period(kappa, 10 * kappa).unwrap().holds);
        }
    }

    #[test]
    fn minimal_periods() {
        // mod 2 the pattern 0,1,1 repeats every 3.
        assert_eq!(minimal_period(3).unwrap(), 3);
        assert_eq!(minimal_period(4).unwrap(), 8);
        for kappa in 3..=40 {
            assert_eq!(claimed_period(kappa) % minimal_period(kappa).unwrap(), 0);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&int(2), &int(3)).unwrap(), int(2));
        assert_eq!(mod_inverse(&int(5), &int(8)).unwrap(), int(5));
        assert_eq!(mod_inverse(&int(3), &int(5)).unwrap(), int(2));
        assert_eq!(mod_inverse(&int(-3), &int(5)).unwrap(), int(3));
        assert!(matches!(
            mod_inverse(&int(4), &int(8)),
            Err(Error::NotInvertible { .. })
        ));
        assert!(mod_inverse(&int(1), &int(1)).is_err());
    }

    #[test]
    fn inverse_matches_brute_force() {
        for m in 2..200i64 {
            for a in 0..m {
                let brute = (1..m).find(|x| a * x % m == 1);
                match mod_inverse(&int(a), &int(m)) {
                    Ok(x) => assert_eq!(Some(x), brute.map(int)),
                    Err(_) => assert!(brute.is_none()),
                }
            }
        }
    }

    #[test]
    fn inverse_congruences() {
        assert!(check_even_inverse_congruence(4).unwrap());
        assert!(check_even_inverse_congruence(6).unwrap());
        assert!(check_even_inverse_congruence(40).unwrap());
        assert!(check_odd_inverse_congruence(3).unwrap());
        assert!(check_odd_inverse_congruence(5).unwrap());
        assert!(check_odd_inverse_congruence(41).unwrap());
        assert!(check_even_inverse_congruence(5).is_err());
        assert!(check_even_inverse_congruence(2).is_err());
        assert!(check_odd_inverse_congruence(4).is_err());
        assert!(check_odd_inverse_congruence(1).is_err());
        for j in (4..=200).step_by(2) {
            assert!(check_even_inverse_congruence(j).unwrap(), "j={j}");
        }
        for j in (3..=199).step_by(2) {
            assert!(check_odd_inverse_congruence(j).unwrap(), "j={j}");
        }
    }

    #[test]
    fn square_identities() {
        assert!(check_square_symmetry(7, 0).unwrap());
        assert!(check_square_symmetry(8, 3).unwrap());
        assert!(check_square_symmetry(9, 5).unwrap());
        assert!(check_square_symmetry(9, 9).is_err());
        for kappa in 3..=60 {
            assert!(check_unit_square(kappa).unwrap(), "kappa={kappa}");
            for i in 0..=kappa {
                assert!(check_square_reflection(kappa, i).unwrap());
            }
        }
        assert!(check_square_reflection(6, 7).is_err());
    }

    #[test]
    fn coprimality() {
        assert!(is_coprime(&int(-3), &int(8)));
        assert!(!is_coprime(&int(6), &int(8)));
    }
}
