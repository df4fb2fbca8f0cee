//! Exhaustive search for `sum_{j=1..k} j F(j)^p = F(n)^q`.
//!
//! For each exponent `p` the weighted sum is advanced one `k` at a time. For
//! every `q` the growth bounds narrow `n` down to at most four indices, and
//! each of those is confirmed or rejected exactly. Two cheap filters run
//! before the big-integer power: a bit-length window and a residue check
//! modulo a 61-bit prime. Both only ever reject pairs that are certainly
//! unequal, so `n` needs no upper limit in the configuration.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{candidate_range, ln_magnitude};
use crate::error::{Error, Result};
use crate::fibcore::{fib, fib_pair, FibCache};
use crate::identities::{
    weighted_power_sum, weighted_sum_linear, weighted_sum_squares, WeightedSumState,
};

const FILTER_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub p: u32,
    pub q: u32,
    pub k: u64,
    pub n: u64,
    pub trivial: bool,
    /// Decimal length of the common value.
    pub lhs_digits: u64,
}

/// `(k, n) = (1, 1), (1, 2)` for every `p, q`, and `k = 2` where the sum is
/// `3 = F(4)`.
pub fn is_trivial(k: u64, n: u64) -> bool {
    matches!((k, n), (1, 1) | (1, 2) | (2, 4))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub p_range: RangeInclusive<u32>,
    pub q_range: RangeInclusive<u32>,
    pub k_max: u64,
    pub parallelism: usize,
}

impl SearchConfig {
    /// `1 <= p, q <= p_max, q_max` and `k <= k_max` on all available cores.
    pub fn boxed(p_max: u32, q_max: u32, k_max: u64) -> Self {
        SearchConfig {
            p_range: 1..=p_max,
            q_range: 1..=q_max,
            k_max,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn with_parallelism(mut self, workers: usize) -> Self {
        self.parallelism = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        for (name, r) in [("p", &self.p_range), ("q", &self.q_range)] {
            if r.is_empty() || *r.start() < 1 {
                return bad(format!(
                    "{name} range {}..={} must be non-empty and start at 1 or above",
                    r.start(),
                    r.end()
                ));
            }
        }
        if self.k_max < 1 {
            return bad("k_max must be at least 1".into());
        }
        if self.parallelism < 1 {
            return bad("parallelism must be at least 1".into());
        }
        Ok(())
    }
}

/// Fibonacci values, bit lengths and filter residues for `n <= max_index`.
/// Built once, then shared read-only by all workers.
struct IndexTable {
    cache: FibCache,
    bits: Vec<u64>,
    residues: Vec<u64>,
}

impl IndexTable {
    fn new(max_index: usize) -> Self {
        let cache = FibCache::filled_to(max_index);
        let bits = (0..=max_index)
            .map(|n| cache.fib(n).unwrap().bits())
            .collect();
        let mut residues = Vec::with_capacity(max_index + 1);
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..=max_index {
            residues.push(a);
            let c = (a + b) % FILTER_PRIME;
            a = b;
            b = c;
        }
        IndexTable {
            cache,
            bits,
            residues,
        }
    }

    /// Enough indices for every sum up to `sum_{j<=k_max} j F(j)^p_max`.
    fn for_box(p_max: u32, k_max: u64) -> Self {
        let largest = weighted_power_sum(k_max, p_max).expect("validated arguments");
        let top = *candidate_range(ln_magnitude(&largest), 1).end();
        Self::new(top as usize + 2)
    }

    /// Exact test of `F(n)^q == s`, with the cheap rejections first.
    fn power_equals(&self, n: u64, q: u32, s: &BigInt, s_bits: u64, s_res: u64) -> bool {
        let Some(i) = usize::try_from(n).ok().filter(|&i| i < self.bits.len()) else {
            return Pow::pow(fib(n as i64), q) == *s;
        };
        let b = self.bits[i];
        let q64 = u64::from(q);
        if b == 0 || s_bits > b * q64 || s_bits < (b - 1) * q64 + 1 {
            return false;
        }
        if mod_pow(self.residues[i], q64) != s_res {
            return false;
        }
        Pow::pow(self.cache.fib(i).unwrap(), q) == *s
    }
}

fn mod_pow(base: u64, mut exp: u64) -> u64 {
    let m = u128::from(FILTER_PRIME);
    let mut acc: u128 = 1;
    let mut b = u128::from(base % FILTER_PRIME);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn decimal_digits(s: &BigInt) -> u64 {
    s.magnitude().to_str_radix(10).len() as u64
}

/// Every solution for one `p`, over all `q` in `q_range` and `k <= k_max`.
fn scan_exponent(
    p: u32,
    q_range: RangeInclusive<u32>,
    k_max: u64,
    table: &IndexTable,
) -> Vec<SolutionRecord> {
    let mut out = Vec::new();
    let mut state = WeightedSumState::new(p).expect("p >= 1");
    loop {
        let s = state.sum();
        let k = state.k();
        let ln_s = ln_magnitude(s);
        let s_bits = s.bits();
        let s_res = (s % FILTER_PRIME).to_u64().expect("reduced below 2^61");
        let mut digits = None;
        for q in q_range.clone() {
            for n in candidate_range(ln_s, q) {
                if table.power_equals(n, q, s, s_bits, s_res) {
                    let lhs_digits = *digits.get_or_insert_with(|| decimal_digits(s));
                    out.push(SolutionRecord {
                        p,
                        q,
                        k,
                        n,
                        trivial: is_trivial(k, n),
                        lhs_digits,
                    });
                }
            }
        }
        if k >= k_max {
            break;
        }
        state.advance();
    }
    out
}

/// All `(k, n)` with `1 <= k <= k_max` solving the equation for fixed `p`,
/// `q`, sorted by `(k, n)`.
pub fn solve_fixed_pq(p: u32, q: u32, k_max: u64) -> Result<Vec<SolutionRecord>> {
    let config = SearchConfig {
        p_range: p..=p,
        q_range: q..=q,
        k_max,
        parallelism: 1,
    };
    conjecture_scan(&config)
}

/// Union of [`solve_fixed_pq`] over the configured grid, sorted by
/// `(p, q, k, n)`. The order does not depend on `parallelism`.
pub fn conjecture_scan(config: &SearchConfig) -> Result<Vec<SolutionRecord>> {
    config.validate()?;
    let table = IndexTable::for_box(*config.p_range.end(), config.k_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut records: Vec<SolutionRecord> = pool.install(|| {
        config
            .p_range
            .clone()
            .into_par_iter()
            .flat_map_iter(|p| scan_exponent(p, config.q_range.clone(), config.k_max, &table))
            .collect()
    });
    records.sort_by_key(|r| (r.p, r.q, r.k, r.n));
    Ok(records)
}

/// Exact check of `sum_{j<=k} j F(j)^p == F(n)^q`.
pub fn verify_solution(p: u32, q: u32, k: u64, n: u64) -> bool {
    if p < 1 || q < 1 || k < 1 || n < 1 {
        return false;
    }
    let Ok(lhs) = weighted_power_sum(k, p) else {
        return false;
    };
    lhs == Pow::pow(fib(n as i64), q)
}

/// For `p = 2`, `q = 1` and `k >= 13`, any solution would need
/// `2k + 4 <= n < 5k/2`. Returns `true` when no `n` in that window works.
pub fn growth_window_clear(k: u64) -> Result<bool> {
    let s = weighted_sum_squares(k)?;
    let lo = 2 * k + 4;
    // n < 5k/2  <=>  2n < 5k
    let hi = (5 * k).div_ceil(2);
    let mut pair = fib_pair(lo);
    while pair.index < hi && pair.value <= s {
        if pair.value == s {
            return Ok(false);
        }
        pair.step();
    }
    Ok(true)
}

/// The four solved `(p, q)` cases and their complete solution sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremCase {
    /// `p = 1, q = 1`
    LinearLinear,
    /// `p = 2, q = 2`
    SquareSquare,
    /// `p = 1, q = 2`
    LinearSquare,
    /// `p = 2, q = 1`
    SquareLinear,
}

impl TheoremCase {
    pub const ALL: [TheoremCase; 4] = [
        TheoremCase::LinearLinear,
        TheoremCase::SquareSquare,
        TheoremCase::LinearSquare,
        TheoremCase::SquareLinear,
    ];

    /// Stable numbering 1..=4 used by the command line.
    pub fn id(self) -> u8 {
        match self {
            TheoremCase::LinearLinear => 1,
            TheoremCase::SquareSquare => 2,
            TheoremCase::LinearSquare => 3,
            TheoremCase::SquareLinear => 4,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or(Error::OutOfRange {
                name: "theorem",
                value: i64::from(id),
                expected: "1, 2, 3 or 4",
            })
    }

    pub fn exponents(self) -> (u32, u32) {
        match self {
            TheoremCase::LinearLinear => (1, 1),
            TheoremCase::SquareSquare => (2, 2),
            TheoremCase::LinearSquare => (1, 2),
            TheoremCase::SquareLinear => (2, 1),
        }
    }

    /// The complete set of `(k, n)`.
    pub fn solution_set(self) -> BTreeSet<(u64, u64)> {
        let pairs: &[(u64, u64)] = match self {
            TheoremCase::LinearLinear => &[(1, 1), (1, 2), (2, 4), (4, 8)],
            TheoremCase::SquareSquare => &[(1, 1), (1, 2)],
            TheoremCase::LinearSquare => &[(1, 1), (1, 2), (3, 4)],
            TheoremCase::SquareLinear => &[(1, 1), (1, 2), (2, 4)],
        };
        pairs.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub case: TheoremCase,
    pub k_max: u64,
    pub expected: BTreeSet<(u64, u64)>,
    pub found: BTreeSet<(u64, u64)>,
    /// Every found sum also equals the closed form for its exponent.
    pub closed_forms_agree: bool,
    /// Only for [`TheoremCase::SquareLinear`]: result of
    /// [`growth_window_clear`] for `13 <= k <= k_max`.
    pub growth_window_clear: Option<bool>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.found == self.expected
            && self.closed_forms_agree
            && self.growth_window_clear.unwrap_or(true)
    }
}

/// Runs the search for one solved case and compares against its set.
pub fn theorem_suite(case: TheoremCase, k_max: u64) -> Result<TheoremReport> {
    let (p, q) = case.exponents();
    let records = solve_fixed_pq(p, q, k_max)?;
    let found = records.iter().map(|r| (r.k, r.n)).collect();
    let closed_forms_agree = records.iter().all(|r| {
        let closed = if p == 1 {
            weighted_sum_linear(r.k)
        } else {
            weighted_sum_squares(r.k)
        };
        closed.is_ok_and(|v| v == Pow::pow(fib(r.n as i64), q))
    });
    let growth_window_clear = (case == TheoremCase::SquareLinear)
        .then(|| (13..=k_max).all(|k| growth_window_clear(k).unwrap_or(false)));
    Ok(TheoremReport {
        case,
        k_max,
        expected: case.solution_set(),
        found,
        closed_forms_agree,
        growth_window_clear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(records: &[SolutionRecord]) -> Vec<(u64, u64)> {
        records.iter().map(|r| (r.k, r.n)).collect()
    }

    #[test]
    fn fixed_exponent_sets() {
        let cases = [
            ((1, 1), vec![(1, 1), (1, 2), (2, 4), (4, 8)]),
            ((2, 2), vec![(1, 1), (1, 2)]),
            ((1, 2), vec![(1, 1), (1, 2), (3, 4)]),
            ((2, 1), vec![(1, 1), (1, 2), (2, 4)]),
            ((3, 3), vec![(1, 1), (1, 2), (3, 4)]),
        ];
        for ((p, q), expected) in cases {
            let found = solve_fixed_pq(p, q, 100).unwrap();
            assert_eq!(pairs(&found), expected, "p={p} q={q}");
            assert!(found.iter().all(|r| verify_solution(r.p, r.q, r.k, r.n)));
        }
    }

    #[test]
    fn triviality_flags() {
        let found = solve_fixed_pq(1, 1, 10).unwrap();
        let flags: Vec<_> = found.iter().map(|r| r.trivial).collect();
        assert_eq!(flags, [true, true, true, false]);
        assert_eq!(found[3].lhs_digits, 2);
        let found = solve_fixed_pq(3, 3, 10).unwrap();
        assert!(!found[2].trivial);
    }

    #[test]
    fn verify_examples() {
        assert!(verify_solution(1, 1, 4, 8));
        assert!(verify_solution(1, 2, 3, 4));
        assert!(!verify_solution(1, 1, 5, 9));
        assert!(!verify_solution(0, 1, 1, 1));
    }

    #[test]
    fn small_scans() {
        let found = conjecture_scan(&SearchConfig::boxed(2, 2, 2)).unwrap();
        assert!(found.iter().all(|r| r.trivial));
        // k = 1 gives n = 1, 2 for every (p, q); k = 2 gives n = 4 for q = 1.
        assert_eq!(found.len(), 4 * 2 + 2);
        let found = conjecture_scan(&SearchConfig::boxed(1, 1, 10)).unwrap();
        let nontrivial: Vec<_> = found.iter().filter(|r| !r.trivial).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!((nontrivial[0].k, nontrivial[0].n), (4, 8));
    }

    #[test]
    fn scan_is_deterministic_across_workers() {
        let base = SearchConfig::boxed(8, 8, 40);
        let a = conjecture_scan(&base.clone().with_parallelism(1)).unwrap();
        let b = conjecture_scan(&base.with_parallelism(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_configs() {
        let mut c = SearchConfig::boxed(3, 3, 3);
        c.p_range = 0..=3;
        assert!(conjecture_scan(&c).is_err());
        let mut c = SearchConfig::boxed(3, 3, 3);
        #[allow(clippy::reversed_empty_ranges)]
        {
            c.q_range = 3..=2;
        }
        assert!(c.validate().is_err());
        assert!(SearchConfig::boxed(3, 3, 0).validate().is_err());
        assert!(SearchConfig::boxed(3, 3, 3)
            .with_parallelism(0)
            .validate()
            .is_err());
    }

    #[test]
    fn theorem_cases() {
        for case in TheoremCase::ALL {
            let report = theorem_suite(case, 60).unwrap();
            assert!(report.passed(), "{case:?}: {report:?}");
            assert_eq!(TheoremCase::from_id(case.id()).unwrap(), case);
        }
        assert!(TheoremCase::from_id(5).is_err());
        // Too small a box misses (4, 8).
        assert!(!theorem_suite(TheoremCase::LinearLinear, 3)
            .unwrap()
            .passed());
    }

    #[test]
    fn growth_window() {
        for k in 13..=200 {
            assert!(growth_window_clear(k).unwrap());
        }
    }

    #[test]
    fn filter_prime_power() {
        assert_eq!(mod_pow(3, 4), 81);
        assert_eq!(mod_pow(FILTER_PRIME + 2, 10), 1024);
    }
}
