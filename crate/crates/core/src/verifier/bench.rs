use std::time::{Duration, Instant};

use serde::Serialize;

use super::check::VerifyError;
use crate::expr::eval;
use crate::registry::{find, IdentityRecord};

const MIN_BATCH: Duration = Duration::from_millis(2);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: String,
    pub n: u32,
    pub naive_ns: f64,
    pub closed_ns: f64,
    pub speedup: f64,
}

/// Median time per evaluation of each side of every entry at every `n`.
/// The left side is the naive nested sum, the right side the closed form.
/// Kernel memos are warmed before timing.
pub fn bench(ids: &[&str], n_points: &[u32], reps: usize, seed: u64) -> Result<Vec<BenchRow>, VerifyError> {
    let records: Vec<&IdentityRecord> = ids
        .iter()
        .map(|id| find(id).ok_or_else(|| VerifyError::UnknownIdentity(id.to_string())))
        .collect::<Result<_, _>>()?;
    let reps = reps.max(5);
    let mut rows = Vec::new();
    for record in records {
        for &n in n_points {
            let Some(binding) = record.bindings(n, seed).into_iter().next() else {
                continue;
            };
            let closed = || eval(&record.rhs, &binding);
            let naive = || eval(&record.lhs, &binding);
            if closed().is_err() || naive_is_err(record, n, &binding) {
                continue;
            }
            let closed_ns = median_ns(reps, &closed);
            let naive_ns = median_ns(reps, &naive);
            rows.push(BenchRow {
                id: record.id.clone(),
                n,
                naive_ns,
                closed_ns,
                speedup: naive_ns / closed_ns,
            });
        }
    }
    Ok(rows)
}

// The naive side is only checked on small inputs; at bench sizes one
// evaluation is the expensive part being measured.
fn naive_is_err(record: &IdentityRecord, n: u32, b: &crate::ParamBinding) -> bool {
    n <= 64 && eval(&record.lhs, b).is_err()
}

fn median_ns<T>(reps: usize, f: &impl Fn() -> T) -> f64 {
    let mut samples: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            let mut iters = 0u32;
            loop {
                std::hint::black_box(f());
                iters += 1;
                if start.elapsed() >= MIN_BATCH {
                    break;
                }
            }
            start.elapsed().as_nanos() as f64 / iters as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("id,n,naive_ns,closed_ns,speedup\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.0},{:.0},{:.2}\n",
            r.id, r.n, r.naive_ns, r.closed_ns, r.speedup
        ));
    }
    out
}
