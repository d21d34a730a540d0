//! Sweeps, oracles and benchmarks.

mod bench;
mod check;
pub mod oracle;
mod report;

pub use crate::transform::{binomial_transform, inverse_binomial_transform};
pub use bench::{bench, bench_csv, BenchRow};
pub use check::{
    check_identity, check_identity_with, reproduce, run_suite, run_suite_in, select,
    CheckOptions, VerifyError,
};
pub use oracle::{brute_force_double_sum, quadruple_sum};
pub use report::{to_json, Counterexample, Status, VerificationReport};
