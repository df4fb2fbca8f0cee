//! Exact Fibonacci and Lucas arithmetic, and an exhaustive solver for
//!
//! ```text
//! 1 F(1)^p + 2 F(2)^p + ... + k F(k)^p = F(n)^q
//! ```
//!
//! * [`fibcore`]: `F(n)`, `L(n)` for signed indices, modular evaluation, a
//!   shared append-only table.
//! * [`identities`]: weighted sums, `F(k) ± 1` and `F(k)^2 ± 1`
//!   factorizations.
//! * [`modular`]: residues modulo `F(kappa)`, period certificates, inverse
//!   congruences.
//! * [`bounds`]: exponential bounds on `F(k)` and candidate indices for a
//!   given magnitude.
//! * [`search`]: the solver, the four complete cases and the grid scan.
//! * [`suites`]: sweeps over all of the above with counterexample reporting.
//!
//! ```
//! use fibsum::search::solve_fixed_pq;
//!
//! let found: Vec<_> = solve_fixed_pq(1, 1, 50)?
//!     .into_iter()
//!     .filter(|r| !r.trivial)
//!     .map(|r| (r.k, r.n))
//!     .collect();
//! assert_eq!(found, [(4, 8)]);
//! # Ok::<(), fibsum::Error>(())
//! ```

pub mod bounds;
mod error;
pub mod fibcore;
pub mod identities;
pub mod modular;
pub mod search;
pub mod suites;

pub use error::{Error, Result};
pub use fibcore::{fib, fib_mod, fib_pair, lucas, FibCache, FibPair};
pub use identities::{weighted_power_sum, WeightedSumState};
pub use search::{conjecture_scan, solve_fixed_pq, verify_solution, SearchConfig, SolutionRecord};

// The guide under book/ is compiled here so its listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/weighted-sums.md")]
    mod weighted_sums {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
