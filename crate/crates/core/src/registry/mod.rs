//! The identity catalog.

mod catalog;
mod export;
mod record;

pub use crate::binding::{FunctionDef, ParamBinding};
pub use catalog::{builtin_catalog, errata_catalog, find, id_key};
pub use export::{export_catalog, import_catalog};
pub use record::{
    random_rational, seed_bytes, CmpOp, Constraint, IdentityRecord, ParamSpec, DRAWS_PER_N,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::collections::{BTreeSet, HashSet};

    #[test]
    fn ids_are_unique_and_sorted() {
        let cat = builtin_catalog();
        assert!(cat.len() >= 60, "only {} entries", cat.len());
        let ids: HashSet<&str> = cat.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.windows(2).all(|w| id_key(&w[0].id) < id_key(&w[1].id)));
        for i in 1..=72 {
            assert!(find(&format!("I-{i:02}")).is_some(), "I-{i:02} missing");
        }
    }

    #[test]
    fn printed_forms_reparse() {
        for r in builtin_catalog().iter().chain(&errata_catalog()) {
            for side in [&r.lhs, &r.rhs] {
                assert_eq!(&parse(&side.to_string()).unwrap(), side, "{}", r.id);
            }
        }
    }

    #[test]
    fn free_names_are_declared() {
        for r in builtin_catalog() {
            let declared: BTreeSet<String> = std::iter::once("n")
                .chain(r.param_names())
                .map(String::from)
                .collect();
            let mut used = r.lhs.free_names();
            used.extend(r.rhs.free_names());
            assert!(used.is_subset(&declared), "{}: {used:?} vs {declared:?}", r.id);
            assert!(r.min_n <= r.max_n_default);
        }
    }

    #[test]
    fn export_round_trips() {
        let text = export_catalog(builtin_catalog());
        assert_eq!(text.lines().count(), builtin_catalog().len());
        assert_eq!(import_catalog(&text).unwrap(), builtin_catalog());
    }

    #[test]
    fn id_order() {
        assert!(id_key("I-9") < id_key("I-10"));
        assert!(id_key("I-10") < id_key("I-10a"));
        assert!(id_key("I-10a") < id_key("I-11"));
    }
}
