//! Solver output against a brute-force scan that shares no code path with
//! the search: literal sums, iterative Fibonacci numbers and a linear walk
//! over `n`.

use fibsum::search::{conjecture_scan, solve_fixed_pq, verify_solution, SearchConfig};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

fn fib_table(len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(), BigInt::one()];
    while v.len() < len {
        let next = &v[v.len() - 1] + &v[v.len() - 2];
        v.push(next);
    }
    v
}

fn brute_force(p: u32, q: u32, k_max: u64, fibs: &[BigInt]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut sum = BigInt::zero();
    for k in 1..=k_max {
        sum += BigInt::from(k) * Pow::pow(&fibs[k as usize], p);
        let mut n = 1;
        loop {
            let v: BigInt = Pow::pow(&fibs[n], q);
            if v > sum {
                break;
            }
            if v == sum {
                out.push((k, n as u64));
            }
            n += 1;
        }
    }
    out
}

#[test]
fn solver_matches_brute_force() {
    let fibs = fib_table(2000);
    for p in 1..=5 {
        for q in 1..=5 {
            let expected = brute_force(p, q, 30, &fibs);
            let found: Vec<_> = solve_fixed_pq(p, q, 30)
                .unwrap()
                .into_iter()
                .map(|r| (r.k, r.n))
                .collect();
            assert_eq!(found, expected, "p={p} q={q}");
        }
    }
}

#[test]
fn grid_scan_matches_per_pair_solves() {
    let grid = conjecture_scan(&SearchConfig::boxed(5, 5, 30).with_parallelism(3)).unwrap();
    let mut stitched = Vec::new();
    for p in 1..=5 {
        for q in 1..=5 {
            stitched.extend(solve_fixed_pq(p, q, 30).unwrap());
        }
    }
    assert_eq!(grid, stitched);
    assert!(grid.iter().all(|r| verify_solution(r.p, r.q, r.k, r.n)));
}

#[test]
fn sums_strictly_increase_in_k() {
    for p in 1..=6 {
        let mut state = fibsum::WeightedSumState::new(p).unwrap();
        for _ in 0..200 {
            let before = state.sum().clone();
            state.advance();
            assert!(state.sum() > &before);
        }
    }
}
