//! Shared setup for the criterion benches.

use batir_core::registry::{find, IdentityRecord};
use batir_core::{eval, ParamBinding, Rational};

pub use batir_core::verifier::{bench, bench_csv, BenchRow};

/// A catalog entry with the binding used to time it at one `n`.
pub struct Case {
    pub record: &'static IdentityRecord,
    pub binding: ParamBinding,
}

impl Case {
    /// The first binding of `id` at `n`, seed 42.
    pub fn new(id: &str, n: u32) -> Case {
        let record = find(id).unwrap_or_else(|| panic!("unknown entry {id}"));
        let binding = record
            .bindings(n, 42)
            .into_iter()
            .next()
            .unwrap_or_else(|| panic!("{id} has no binding at n = {n}"));
        Case { record, binding }
    }

    pub fn naive(&self) -> Rational {
        eval(&self.record.lhs, &self.binding).expect("lhs evaluates")
    }

    pub fn closed(&self) -> Rational {
        eval(&self.record.rhs, &self.binding).expect("rhs evaluates")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides_agree() {
        let c = Case::new("I-05", 30);
        assert_eq!(c.naive(), c.closed());
    }
}
