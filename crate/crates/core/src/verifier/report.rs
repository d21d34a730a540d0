use serde::{Deserialize, Serialize};

use crate::binding::ParamBinding;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIP",
        }
    }
}

/// A binding at which the two sides differ. `binding` excludes `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub binding: ParamBinding,
    pub n: u32,
    pub lhs_value: Rational,
    pub rhs_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub bindings_tested: usize,
    pub n_range: [u32; 2],
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    /// Seconds; `None` unless timings were requested, so that reports from
    /// equal seeds stay byte-identical.
    pub wall_time: Option<f64>,
    pub rng_seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
