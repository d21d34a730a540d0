use std::time::Instant;

use glob::Pattern;
use rayon::prelude::*;
use thiserror::Error;

use super::report::{Counterexample, Status, VerificationReport};
use crate::binding::ParamBinding;
use crate::expr::eval;
use crate::registry::{builtin_catalog, IdentityRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("no identity matches `{0}`")]
    UnknownIdentity(String),
    #[error("bad id pattern `{0}`: {1}")]
    BadPattern(String, String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub timings: bool,
}

enum Outcome {
    Mismatch(Counterexample),
    Error(String),
}

/// Sweep `record` over `n` in `[min_n, n_max]` and every binding of its
/// domain, stopping at the first binding where the sides differ.
pub fn check_identity(record: &IdentityRecord, n_max: u32, seed: u64) -> VerificationReport {
    check_identity_with(record, n_max, seed, CheckOptions::default())
}

pub fn check_identity_with(
    record: &IdentityRecord,
    n_max: u32,
    seed: u64,
    opts: CheckOptions,
) -> VerificationReport {
    let start = Instant::now();
    let tasks: Vec<(u32, ParamBinding)> = (record.min_n..=n_max)
        .flat_map(|n| record.bindings(n, seed).into_iter().map(move |b| (n, b)))
        .collect();
    let first_bad = tasks
        .par_iter()
        .enumerate()
        .find_map_first(|(i, (n, b))| run_one(record, *n, b).map(|o| (i, o)));
    let (bindings_tested, status, counterexample) = match first_bad {
        None if tasks.is_empty() => (0, Status::Skipped("no bindings in range".into()), None),
        None => (tasks.len(), Status::Pass, None),
        Some((i, Outcome::Mismatch(cx))) => (i + 1, Status::Fail, Some(cx)),
        Some((i, Outcome::Error(msg))) => (i + 1, Status::Skipped(msg), None),
    };
    VerificationReport {
        identity_id: record.id.clone(),
        bindings_tested,
        n_range: [record.min_n, n_max],
        status,
        counterexample,
        wall_time: opts.timings.then(|| start.elapsed().as_secs_f64()),
        rng_seed: seed,
    }
}

fn run_one(record: &IdentityRecord, n: u32, b: &ParamBinding) -> Option<Outcome> {
    let sides = eval(&record.lhs, b).and_then(|l| eval(&record.rhs, b).map(|r| (l, r)));
    match sides {
        Ok((l, r)) if l == r => None,
        Ok((lhs_value, rhs_value)) => {
            let mut binding = b.clone();
            binding.values.remove("n");
            Some(Outcome::Mismatch(Counterexample {
                binding,
                n,
                lhs_value,
                rhs_value,
            }))
        }
        Err(e) => Some(Outcome::Error(format!("n = {n}, binding {b}: {e}"))),
    }
}

/// Re-evaluate a counterexample; returns the two sides.
pub fn reproduce(
    record: &IdentityRecord,
    cx: &Counterexample,
) -> Result<(crate::Rational, crate::Rational), crate::EvalError> {
    let mut b = cx.binding.clone();
    b.set("n", crate::Rational::from(cx.n as i64));
    Ok((eval(&record.lhs, &b)?, eval(&record.rhs, &b)?))
}

/// Records from `catalog` whose id matches the glob `filter`, in id order.
pub fn select<'a>(
    catalog: &'a [IdentityRecord],
    filter: &str,
) -> Result<Vec<&'a IdentityRecord>, VerifyError> {
    let pattern =
        Pattern::new(filter).map_err(|e| VerifyError::BadPattern(filter.into(), e.to_string()))?;
    let hits: Vec<&IdentityRecord> = catalog.iter().filter(|r| pattern.matches(&r.id)).collect();
    if hits.is_empty() {
        return Err(VerifyError::UnknownIdentity(filter.into()));
    }
    Ok(hits)
}

/// Verify every catalog entry matching `filter`. Reports come back sorted by
/// id whatever the thread count.
pub fn run_suite(
    filter: &str,
    n_max_override: Option<u32>,
    seed: u64,
) -> Result<Vec<VerificationReport>, VerifyError> {
    run_suite_in(builtin_catalog(), filter, n_max_override, seed, CheckOptions::default())
}

pub fn run_suite_in(
    catalog: &[IdentityRecord],
    filter: &str,
    n_max_override: Option<u32>,
    seed: u64,
    opts: CheckOptions,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let selected = select(catalog, filter)?;
    let mut reports: Vec<VerificationReport> = selected
        .par_iter()
        .map(|r| {
            let n_max = n_max_override.unwrap_or(r.max_n_default).max(r.min_n);
            check_identity_with(r, n_max, seed, opts)
        })
        .collect();
    reports.sort_by(|a, b| {
        crate::registry::id_key(&a.identity_id).cmp(&crate::registry::id_key(&b.identity_id))
    });
    Ok(reports)
}
