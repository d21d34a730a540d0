use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use batir_core::expr::{eval, parse};
use batir_core::registry::{builtin_catalog, export_catalog, ParamBinding};
use batir_core::verifier::{
    bench, bench_csv, run_suite_in, select, to_json, CheckOptions, Status, VerificationReport,
};
use batir_core::Rational;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "batir", version, about = "Exact verification of double-sum identities")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries with their anchors.
    List {
        #[arg(long, default_value = "*")]
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify catalog entries over their sweeps.
    Verify {
        /// Glob over identity ids, e.g. "I-2?".
        #[arg(long, default_value = "*")]
        id: String,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, env = "BATIR_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time per entry (reports are then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate an expression.
    Eval {
        expr: String,
        /// Bind a name, e.g. `--bind n=3 --bind x=1/2`.
        #[arg(long = "bind", value_parser = parse_bind)]
        binds: Vec<(String, Rational)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time naive double sums against closed forms.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "I-05")]
        id: Vec<String>,
        #[arg(long = "n", value_delimiter = ',', default_value = "100,200,400")]
        n_points: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, env = "BATIR_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the CSV table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the catalog as JSON Lines.
    ExportCatalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_bind(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value: Rational = value.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((name.trim().to_string(), value))
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), ExitCode> {
    fs::write(path, text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(EXIT_INTERNAL)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match cli.command {
        Command::List { id, format } => list(&id, format),
        Command::Verify {
            id,
            n_max,
            seed,
            format,
            out,
            timings,
        } => verify(&id, n_max, seed, format, out, timings),
        Command::Eval {
            expr,
            binds,
            format,
        } => eval_cmd(&expr, binds, format),
        Command::Bench {
            id,
            n_points,
            reps,
            seed,
            format,
            out,
        } => bench_cmd(&id, &n_points, reps, seed, format, out),
        Command::ExportCatalog { out } => {
            let text = export_catalog(builtin_catalog());
            match out {
                Some(path) => match write_out(&path, &text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(code) => code,
                },
                None => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
            }
        }
    }
}

fn list(id: &str, format: Format) -> ExitCode {
    let records = match select(builtin_catalog(), id) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match format {
        Format::Csv => return usage("--format csv is only valid for bench"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&records).expect("records serialize")
        ),
        Format::Text => {
            for r in records {
                println!("{}\t{}\t[{}]", r.id, r.title, r.anchor);
            }
        }
    }
    ExitCode::SUCCESS
}

fn verify(
    id: &str,
    n_max: Option<u32>,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
    timings: bool,
) -> ExitCode {
    if format == Format::Csv {
        return usage("--format csv is only valid for bench");
    }
    let opts = CheckOptions { timings };
    let reports = match run_suite_in(builtin_catalog(), id, n_max, seed, opts) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let json = to_json(&reports);
    if let Some(path) = &out {
        if let Err(code) = write_out(path, &json) {
            return code;
        }
    }
    match format {
        Format::Json => println!("{json}"),
        _ => print_text(&reports),
    }
    exit_status(&reports)
}

fn print_text(reports: &[VerificationReport]) {
    let catalog = builtin_catalog();
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    for r in reports {
        let anchor = catalog
            .iter()
            .find(|c| c.id == r.identity_id)
            .map_or("", |c| c.anchor.as_str());
        let _ = writeln!(
            w,
            "{} {} ({} bindings, n in [{},{}]) [{}]",
            r.identity_id,
            r.status.label(),
            r.bindings_tested,
            r.n_range[0],
            r.n_range[1],
            anchor
        );
        if let Some(cx) = &r.counterexample {
            let _ = writeln!(
                w,
                "    counterexample n={} {}: lhs={} rhs={}",
                cx.n, cx.binding, cx.lhs_value, cx.rhs_value
            );
        }
        if let Status::Skipped(reason) = &r.status {
            let _ = writeln!(w, "    {reason}");
        }
    }
    let count = |s: &str| reports.iter().filter(|r| r.status.label() == s).count();
    let _ = writeln!(
        w,
        "{} passed, {} failed, {} skipped",
        count("PASS"),
        count("FAIL"),
        count("SKIP")
    );
}

fn exit_status(reports: &[VerificationReport]) -> ExitCode {
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(EXIT_FAIL)
    } else if reports.iter().all(VerificationReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INTERNAL)
    }
}

fn eval_cmd(src: &str, binds: Vec<(String, Rational)>, format: Format) -> ExitCode {
    let expr = match parse(src) {
        Ok(e) => e,
        Err(e) => return usage(format!("parse error at {e}")),
    };
    let mut binding = ParamBinding::new();
    for (name, value) in binds {
        binding.set(&name, value);
    }
    match eval(&expr, &binding) {
        Ok(v) => {
            match format {
                Format::Csv => return usage("--format csv is only valid for bench"),
                Format::Json => println!("{}", serde_json::json!({ "expr": expr, "value": v })),
                Format::Text => println!("{v}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn bench_cmd(
    ids: &[String],
    n_points: &[u32],
    reps: usize,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> ExitCode {
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    let rows = match bench(&ids, n_points, reps, seed) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let csv = bench_csv(&rows);
    if let Some(path) = &out {
        if let Err(code) = write_out(path, &csv) {
            return code;
        }
    }
    match format {
        Format::Csv => print!("{csv}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("rows serialize")
        ),
        Format::Text => {
            println!("{:<8} {:>6} {:>14} {:>14} {:>9}", "id", "n", "naive_ns", "closed_ns", "speedup");
            for r in &rows {
                println!(
                    "{:<8} {:>6} {:>14.0} {:>14.0} {:>9.1}",
                    r.id, r.n, r.naive_ns, r.closed_ns, r.speedup
                );
            }
        }
    }
    ExitCode::SUCCESS
}
