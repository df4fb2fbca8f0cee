//! Exact Fibonacci and Lucas numbers.
//!
//! Everything here is evaluated with fast doubling on arbitrary-precision
//! integers:
//!
//! ```text
//! F(2k)   = F(k) * (2 F(k+1) - F(k))
//! F(2k+1) = F(k)^2 + F(k+1)^2
//! ```
//!
//! Negative indices are obtained from the non-negative value by the sign rules
//! `F(-k) = (-1)^(k+1) F(k)` and `L(-k) = (-1)^k L(k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A consecutive pair `(F(n), F(n+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPair {
    pub index: u64,
    /// `F(index)`
    pub value: BigInt,
    /// `F(index + 1)`
    pub next: BigInt,
}

impl FibPair {
    /// The pair at index 0, `(0, 1)`.
    pub fn zero() -> Self {
        FibPair {
            index: 0,
            value: BigInt::zero(),
            next: BigInt::one(),
        }
    }

    /// Moves one index forward using the recurrence.
    pub fn step(&mut self) {
        let following = &self.value + &self.next;
        self.value = std::mem::replace(&mut self.next, following);
        self.index += 1;
    }

    /// `L(index) = 2 F(index+1) - F(index)`.
    pub fn lucas(&self) -> BigInt {
        (&self.next << 1u32) - &self.value
    }
}

/// Returns `(F(n), F(n+1))` using O(log n) big-integer multiplications.
pub fn fib_pair(n: u64) -> FibPair {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        let c = &a * ((&b << 1u32) - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    FibPair {
        index: n,
        value: a,
        next: b,
    }
}

/// `F(n)` for any signed index.
pub fn fib(n: i64) -> BigInt {
    let magnitude = fib_pair(n.unsigned_abs()).value;
    // F(-k) = -F(k) exactly when k is even.
    if n < 0 && n % 2 == 0 {
        -magnitude
    } else {
        magnitude
    }
}

/// `L(n)` for any signed index.
pub fn lucas(n: i64) -> BigInt {
    let magnitude = fib_pair(n.unsigned_abs()).lucas();
    if n < 0 && n % 2 != 0 {
        -magnitude
    } else {
        magnitude
    }
}

/// `F(n) mod m`, normalized into `[0, m)`.
pub fn fib_mod(n: u64, m: &BigInt) -> Result<BigInt> {
    if *m <= BigInt::one() {
        return Err(Error::ModulusTooSmall(m.clone()));
    }
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        let c = (&a * ((&b << 1u32) - &a)).mod_floor(m);
        let d = (&a * &a + &b * &b).mod_floor(m);
        if (n >> bit) & 1 == 1 {
            b = (&c + &d).mod_floor(m);
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    Ok(a)
}

/// Append-only table of `F(0..len)` and `L(0..len)`.
///
/// Grow it with [`FibCache::extend_to`] during a fill phase, then share it by
/// reference; lookups take `&self` and the table never shrinks.
#[derive(Debug, Clone)]
pub struct FibCache {
    fib: Vec<BigInt>,
    lucas: Vec<BigInt>,
}

impl Default for FibCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FibCache {
    pub fn new() -> Self {
        FibCache {
            fib: vec![BigInt::zero(), BigInt::one()],
            lucas: vec![BigInt::from(2), BigInt::one()],
        }
    }

    /// A cache holding at least indices `0..=max_index`.
    pub fn filled_to(max_index: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(max_index);
        cache
    }

    pub fn extend_to(&mut self, max_index: usize) {
        self.fib
            .reserve(max_index.saturating_sub(self.fib.len() - 1));
        self.lucas
            .reserve(max_index.saturating_sub(self.lucas.len() - 1));
        while self.fib.len() <= max_index {
            let i = self.fib.len();
            let f = &self.fib[i - 1] + &self.fib[i - 2];
            let l = &self.lucas[i - 1] + &self.lucas[i - 2];
            self.fib.push(f);
            self.lucas.push(l);
        }
    }

    /// Largest index currently stored.
    pub fn max_index(&self) -> usize {
        self.fib.len() - 1
    }

    pub fn fib(&self, n: usize) -> Option<&BigInt> {
        self.fib.get(n)
    }

    pub fn lucas(&self, n: usize) -> Option<&BigInt> {
        self.lucas.get(n)
    }

    /// `F(n)` from the table when present, otherwise computed directly.
    pub fn fib_or_compute(&self, n: u64) -> BigInt {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.fib(i).cloned())
            .unwrap_or_else(|| fib_pair(n).value)
    }
}
