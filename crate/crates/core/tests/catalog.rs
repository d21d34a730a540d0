use std::path::PathBuf;

use batir_core::registry::{
    builtin_catalog, errata_catalog, export_catalog, find, import_catalog,
};
use batir_core::verifier::{
    check_identity, oracle, quadruple_sum, reproduce, run_suite, Status, VerifyError,
};
use batir_core::{eval, parse, ParamBinding, Rational};

fn at(n: i64) -> ParamBinding {
    ParamBinding::new().with("n", Rational::from(n))
}

#[test]
fn printed_errata_fail_reproducibly() {
    for rec in errata_catalog() {
        let rep = check_identity(&rec, rec.max_n_default, 42);
        assert_eq!(rep.status, Status::Fail, "{} should fail", rec.id);
        let cx = rep.counterexample.expect("counterexample");
        let (l, r) = reproduce(&rec, &cx).unwrap();
        assert_eq!((l, r), (cx.lhs_value.clone(), cx.rhs_value.clone()), "{}", rec.id);
        assert_ne!(cx.lhs_value, cx.rhs_value);
        let fixed = rec.note.as_deref().unwrap().trim_start_matches("corrected as ");
        assert!(check_identity(find(fixed).unwrap(), 12, 42).passed(), "{fixed}");
    }
}

#[test]
fn smoke_sweep_near_min_n() {
    for rec in builtin_catalog() {
        let rep = check_identity(rec, rec.min_n + 3, 7);
        assert_eq!(rep.status, Status::Pass, "{}: {:?}", rec.id, rep.status);
        assert!(rep.bindings_tested > 0);
    }
}

#[test]
fn quadruple_sum_against_loops() {
    let rec = find("I-27").unwrap();
    for r in 0..=10 {
        let (l, rhs) = (eval(&rec.lhs, &at(r)).unwrap(), eval(&rec.rhs, &at(r)).unwrap());
        assert_eq!(l, quadruple_sum(r as usize), "r = {r}");
        assert_eq!(l, rhs, "r = {r}");
    }
    let rep = run_suite("I-27", Some(10), 42).unwrap();
    assert_eq!(rep[0].status, Status::Pass);
}

#[test]
fn central_binomial_weights_against_loops() {
    let rec = find("I-43").unwrap();
    for n in 0..=15 {
        let (l, r) = oracle::central_binomial_oh(n as usize);
        assert_eq!(l, r);
        assert_eq!(eval(&rec.lhs, &at(n)).unwrap(), l, "n = {n}");
        assert_eq!(eval(&rec.rhs, &at(n)).unwrap(), r, "n = {n}");
    }
}

#[test]
fn unknown_identity() {
    assert!(matches!(run_suite("I-99", None, 42), Err(VerifyError::UnknownIdentity(_))));
}

#[test]
fn odd_harmonic_double_sum_example() {
    let e = parse("sum(k,1,n, sum(j,0,k-1, 1/((n-j)*(2*(n-j)-1))))").unwrap();
    assert_eq!(eval(&e, &at(3)).unwrap(), Rational::ratio(23, 15).unwrap());
}

// Set UPDATE_CATALOG=1 to rewrite the checked-in export after an intended change.
#[test]
fn export_matches_golden_file() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog.jsonl");
    let text = export_catalog(builtin_catalog());
    if std::env::var_os("UPDATE_CATALOG").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(&path).expect("catalog.jsonl present");
    assert_eq!(text, golden, "catalog export drifted; rerun with UPDATE_CATALOG=1");
    assert_eq!(import_catalog(&golden).unwrap(), builtin_catalog());
}
