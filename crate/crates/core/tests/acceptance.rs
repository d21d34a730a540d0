//! One test per acceptance criterion. Each prints a `PASS`/`FAIL` line to
//! stderr (outside the harness capture) before asserting.

use std::io::Write;
use std::sync::Mutex;
use std::time::Instant;

use batir_core::kernels::{self, bernoulli_alt, binom_int};
use batir_core::registry::{builtin_catalog, find, random_rational, IdentityRecord};
use batir_core::verifier::{
    bench, binomial_transform, brute_force_double_sum, check_identity, reproduce, run_suite,
    to_json, Status,
};
use batir_core::{eval, ParamBinding, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Timing-sensitive criteria must not share the CPU with a full sweep.
static SERIAL: Mutex<()> = Mutex::new(());

fn report(criterion: u32, name: &str, ok: bool, detail: &str) {
    let line = format!(
        "acceptance {criterion} {name}: {} ({detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn q(p: i64, d: i64) -> Rational {
    Rational::ratio(p, d).unwrap()
}

fn record(id: &str) -> &'static IdentityRecord {
    find(id).unwrap_or_else(|| panic!("{id} missing"))
}

fn eval_at(id: &str, n: i64) -> (Rational, Rational) {
    let r = record(id);
    let b = ParamBinding::new().with("n", Rational::from(n));
    (eval(&r.lhs, &b).unwrap(), eval(&r.rhs, &b).unwrap())
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

#[test]
fn c1_full_suite() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let reports = run_suite("*", None, 42).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} {}", r.identity_id, r.status.label()))
        .collect();
    let ok = bad.is_empty() && secs <= 120.0;
    report(
        1,
        "full suite",
        ok,
        &format!("{} entries, {} not passing {:?}, {secs:.1}s", reports.len(), bad.len(), bad),
    );
}

#[test]
fn c2_master_identities() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (i01, i02) = (record("I-01"), record("I-02"));
    let mut failures = 0;
    for _ in 0..200 {
        let n = rng.random_range(0..=30usize);
        let a = random_seq(&mut rng, n + 1);
        let b = random_seq(&mut rng, n + 1);
        let (shifted, reversed, common) = brute_force_double_sum(&a, &b, n);
        let binding = ParamBinding::new()
            .with("n", Rational::from(n))
            .with_sequence("a", a)
            .with_sequence("b", b);
        let ok = shifted == common
            && reversed == common
            && eval(&i01.lhs, &binding).unwrap() == shifted
            && eval(&i02.lhs, &binding).unwrap() == reversed
            && eval(&i01.rhs, &binding).unwrap() == common;
        if !ok {
            failures += 1;
        }
    }
    report(2, "master identities", failures == 0, &format!("200 random pairs, {failures} failures"));
}

#[test]
fn c3_bernoulli() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let agree = (0..=60).all(|n| {
        let b = kernels::bernoulli(n);
        b == bernoulli_alt::akiyama_tanigawa(n) && b == bernoulli_alt::stirling_sum(n)
    });
    let double_sum = (1..=25).all(|n| {
        let (lhs, rhs) = eval_at("I-13", n);
        lhs == rhs && lhs == kernels::bernoulli(n as usize)
    });
    let i13 = check_identity(record("I-13"), 25, 42).passed();
    report(
        3,
        "bernoulli cross-check",
        agree && double_sum && i13,
        &format!("three routes n<=60: {agree}, I-13 double sum n<=25: {}", double_sum && i13),
    );
}

// Plain loops, no expression engine.
fn dixon_oracle(n: u64) -> Rational {
    let mut total = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let b = binom_int(n, j);
            total += &(q(sign, (n - j) as i64) * &b * &b * &b);
        }
    }
    total
}

fn knuth_boyadzhiev_oracle(n: u64) -> Rational {
    let mut total = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            total += &(binom_int(n, j) * q(1, (k - j) as i64));
        }
    }
    total
}

fn harmonic_p1_oracle(n: i64) -> Rational {
    let mut total = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            total += &q(1, (k - j) * (n + 1 - j) * (n + 2 - j));
        }
    }
    total
}

fn alternating_oracle(n: u64) -> Rational {
    let mut total = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += &(binom_int(n, j) * q(sign, (k - j) as i64));
        }
    }
    total
}

#[test]
fn c4_point_checks() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let cases = [
        ("I-40", 2, Rational::from(-7), dixon_oracle(2)),
        ("I-36", 2, q(7, 2), knuth_boyadzhiev_oracle(2)),
        ("I-25", 1, q(1, 6), harmonic_p1_oracle(1)),
        ("I-56", 3, q(1, 3), alternating_oracle(3)),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (id, n, expected, oracle) in cases {
        let (lhs, rhs) = eval_at(id, n);
        let hit = oracle == expected && lhs == expected && rhs == expected;
        ok &= hit;
        notes.push(format!("{id}(n={n})={lhs}"));
    }
    report(4, "point checks", ok, &notes.join(", "));
}

#[test]
fn c5_binomial_transform() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let involution = (0..100).all(|_| {
        let len = rng.random_range(1..=64usize);
        let s = random_seq(&mut rng, len);
        binomial_transform(&binomial_transform(&s)) == s
    });
    let alt = |f: fn(usize) -> Rational| -> Vec<Rational> {
        (0..=20)
            .map(|n| if n % 2 == 0 { f(n) } else { -f(n) })
            .collect()
    };
    let fib = binomial_transform(&alt(kernels::fibonacci))
        == (0..=20).map(|n| kernels::fibonacci(2 * n)).collect::<Vec<_>>();
    let luc = binomial_transform(&alt(kernels::lucas))
        == (0..=20).map(|n| kernels::lucas(2 * n)).collect::<Vec<_>>();
    let ber = binomial_transform(&alt(kernels::bernoulli)) == alt(kernels::bernoulli);
    report(
        5,
        "binomial transform",
        involution && fib && luc && ber,
        &format!("involution x100: {involution}, fibonacci: {fib}, lucas: {luc}, bernoulli: {ber}"),
    );
}

#[test]
fn c6_mutation() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let catalog = builtin_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut picked: Vec<usize> = Vec::new();
    while picked.len() < 10 {
        let i = rng.random_range(0..catalog.len());
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    let mut caught = Vec::new();
    let mut ok = true;
    for i in picked {
        let mutant = catalog[i].mutated();
        let rep = check_identity(&mutant, mutant.max_n_default, 42);
        let reproduced = rep.counterexample.as_ref().is_some_and(|cx| {
            matches!(reproduce(&mutant, cx), Ok((l, r)) if l == cx.lhs_value && r == cx.rhs_value && l != r)
        });
        ok &= rep.status == Status::Fail && reproduced;
        caught.push(mutant.id.clone());
    }
    report(6, "mutation sensitivity", ok, &format!("mutated {}", caught.join(" ")));
}

#[test]
fn c7_determinism() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| to_json(&run_suite("*", None, 42).unwrap()))
    };
    let one = run(1);
    let four = run(4);
    let again = run(4);
    let ok = one == four && four == again;
    report(7, "determinism", ok, &format!("{} bytes, jobs 1 vs 4 vs 4", one.len()));
}

#[test]
fn c8_bench_shape() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let rows = bench(&["I-05"], &[2000, 4000], 5, 42).unwrap();
    assert_eq!(rows.len(), 2);
    let naive = rows[1].naive_ns / rows[0].naive_ns;
    let closed = rows[1].closed_ns / rows[0].closed_ns;
    report(
        8,
        "bench shape",
        naive > 4.0 && closed <= 2.5,
        &format!("naive x{naive:.2}, closed form x{closed:.2} from n=2000 to n=4000"),
    );
}
