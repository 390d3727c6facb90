use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mildset::checks::{run_check, verify_all, CheckSpec, Report};
use mildset::{evaluate, Value};
use serde_json::json;

/// Exact computations with the injection monoid and its EM-simplicial sets.
#[derive(Parser)]
#[command(name = "mildset", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long, default_value_t = CheckSpec::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = CheckSpec::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = CheckSpec::DEFAULT_DEGREE)]
    degree: usize,
    #[arg(long = "entry-bound", default_value_t = CheckSpec::DEFAULT_ENTRY_BOUND)]
    entry_bound: i64,
    #[arg(long = "period-bound", default_value_t = CheckSpec::DEFAULT_PERIOD_BOUND)]
    period_bound: i64,
    /// Include wall-clock time in reports (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

impl Params {
    fn spec(&self, id: &str) -> CheckSpec {
        CheckSpec {
            id: id.to_string(),
            trials: self.trials,
            seed: self.seed,
            degree: self.degree,
            entry_bound: self.entry_bound,
            period_bound: self.period_bound,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run one statement check.
    Check {
        id: String,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// Run every statement check.
    VerifyAll {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// Apply Phi to an operadic class.
    Phi {
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Preimage under Phi of a sequence of simplices.
    PhiInv {
        simplices: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide equality of two operadic classes.
    ClassEq {
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a bounded family is a *-module.
    StarModuleCheck {
        family: String,
        /// Entry bound for finite injections (default depends on the family).
        #[arg(long = "entry-bound")]
        entry_bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Partial sum of two configuration simplices.
    Psum {
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the commutative monoid checks for the free *-algebra.
    CmonVerify {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// Box product membership of a sequence of simplices.
    Box {
        simplices: String,
        #[arg(long)]
        json: bool,
    },
}

fn print_value(v: &Value, json: bool) {
    if json {
        println!("{}", v.to_json());
    } else {
        println!("{v}");
    }
}

fn eval_and_print(src: &str, json: bool) -> ExitCode {
    match evaluate(src) {
        Ok(v) => {
            print_value(&v, json);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                println!("{}", json!({ "error": e.to_string(), "column": e.col() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}

fn print_report(r: &Report) {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    print!("{status} {} ({:?}, {} trials, seed {})", r.id, r.mode, r.trials, r.seed);
    if let Some(ms) = r.elapsed_ms {
        print!(" {ms} ms");
    }
    println!();
    println!("  {}", r.statement);
    if !counts.is_empty() {
        println!("  {}", counts.join(", "));
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    for f in &r.failures {
        println!("  failure: {f}");
    }
    if r.failure_count > r.failures.len() {
        println!("  ... {} failures in total", r.failure_count);
    }
}

fn finish(mut reports: Vec<Report>, timing: bool, json: bool) -> ExitCode {
    if !timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    if json {
        let out = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        println!("{}", out.expect("reports serialize"));
    } else {
        reports.iter().for_each(print_report);
        if reports.len() > 1 {
            let failed = reports.iter().filter(|r| !r.passed).count();
            println!("{} checks, {failed} failed", reports.len());
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_one(spec: CheckSpec, timing: bool, json: bool) -> ExitCode {
    match run_check(&spec) {
        Ok(r) => finish(vec![r], timing, json),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, json } => eval_and_print(&expr, json),
        Command::Check { id, params, json } => run_one(params.spec(&id), params.timing, json),
        Command::CmonVerify { params, json } => run_one(params.spec("cmonAxioms"), params.timing, json),
        Command::VerifyAll { params, json } => finish(verify_all(&params.spec("")), params.timing, json),
        Command::Phi { class, json } => eval_and_print(&format!("phi({class})"), json),
        Command::PhiInv { simplices, json } => eval_and_print(&format!("phi_inv({simplices})"), json),
        Command::ClassEq { left, right, json } => eval_and_print(&format!("class_eq({left}, {right})"), json),
        Command::Psum { left, right, json } => eval_and_print(&format!("psum({left}, {right})"), json),
        Command::Box { simplices, json } => eval_and_print(&format!("box? {simplices}"), json),
        Command::StarModuleCheck {
            family,
            entry_bound,
            json,
        } => {
            let fam = match evaluate(&family) {
                Ok(Value::Family(f)) => f,
                Ok(other) => {
                    eprintln!("error: expected a family, got a {}", other.kind());
                    return ExitCode::from(2);
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let bound = entry_bound.unwrap_or_else(|| fam.default_bound());
            let r = fam.star_module(bound);
            let unhit: Vec<_> = r
                .unhit
                .iter()
                .map(|w| {
                    let support = match &w.support {
                        mildset_core::Support::Least(a) => a.to_string(),
                        mildset_core::Support::NoMinimal => "NoMinimal".to_string(),
                    };
                    json!({ "simplex": w.simplex.to_string(), "level": w.level, "support": support })
                })
                .collect();
            let report = json!({
                "family": fam.to_string(),
                "entry_bound": bound,
                "passes": r.passes(),
                "samples": r.samples,
                "hit": r.hit,
                "classes": r.classes,
                "phi_equal_pairs": r.phi_equal_pairs,
                "injectivity_failures": r.injectivity_failures,
                "round_trip_failures": r.round_trip_failures,
                "image_not_mild": r.image_not_mild,
                "unhit": unhit,
            });
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                let verdict = if r.passes() { "is a *-module" } else { "is not a *-module" };
                println!("{fam} {verdict} (entries <= {bound})");
                println!("  {} of {} samples hit, {} equal-image pairs", r.hit, r.samples, r.phi_equal_pairs);
                for w in unhit.iter().take(5) {
                    println!("  unhit: {} at level {} with support {}", w["simplex"].as_str().unwrap(), w["level"], w["support"].as_str().unwrap());
                }
            }
            if r.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
