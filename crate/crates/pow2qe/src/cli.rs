//! Command-line surface. Exit codes: 0 success (or a true sentence), 1 a false
//! sentence or a failed selftest, 2 any error.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::limits::{Guard, Limits};
use pow2qe_core::pipeline::{eliminate_all, eliminate_all_with_report};
use pow2qe_core::Name;
use serde_json::json;

use crate::clock::StdClock;
use crate::harness::selftest;
use crate::parse_formula;
use crate::report::GrowthReportJson;

#[derive(Parser, Debug)]
#[command(name = "pow2qe", version, about = "Quantifier elimination for the reals with powers of two")]
struct Cli {
    /// Largest intermediate formula, in symbols.
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,
    /// Wall-clock budget for one command.
    #[arg(long, global = true, value_name = "SECS")]
    max_seconds: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a quantifier-free equivalent.
    Qe { formula: String },
    /// Decide a sentence: prints true or false, exit 0 or 1.
    Decide { sentence: String },
    /// Evaluate a quantifier-free formula at rational values.
    Eval {
        formula: String,
        /// Comma-separated `name=value` pairs, values as `p` or `p/q`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Eliminate and print the growth report as JSON.
    Stats { formula: String },
    /// Run the lemma-equivalence suite and the mutation checks.
    Selftest {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn parse_assignment(text: &str) -> Result<Assignment, Failure> {
    let mut env = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| Failure(format!("expected name=value, got {part:?}")))?;
        let q = BigRational::from_str(value.trim()).map_err(|_| Failure(format!("not a rational: {value:?}")))?;
        env.insert(Name::from(name.trim()), q);
    }
    Ok(env)
}

fn boolean(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let clock = StdClock::new();
    let defaults = Limits::default();
    let limits = Limits {
        max_size: cli.max_size.unwrap_or(defaults.max_size),
        max_millis: cli.max_seconds.map(|s| (s * 1000.0).max(0.0) as u64),
        ..defaults
    };
    let guard = Guard::new(limits, &clock);
    match &cli.command {
        Command::Qe { formula } => {
            let f = parse_formula(formula)?;
            let g = eliminate_all(&f, &guard)?;
            if cli.json {
                writeln!(out, "{}", json!({ "result": g.to_string() }))?;
            } else {
                writeln!(out, "{g}")?;
            }
            Ok(0)
        }
        Command::Decide { sentence } => {
            let f = parse_formula(sentence)?;
            let v = pow2qe_core::pipeline::decide(&f, &guard)?;
            if cli.json {
                writeln!(out, "{}", json!({ "result": v }))?;
            } else {
                writeln!(out, "{}", boolean(v))?;
            }
            Ok(if v { 0 } else { 1 })
        }
        Command::Eval { formula, assign } => {
            let f = parse_formula(formula)?;
            if !f.is_quantifier_free() {
                return Err(Failure("eval takes a quantifier-free formula; use decide or qe".into()));
            }
            let v = eval_qf(&f, &parse_assignment(assign)?)?;
            if cli.json {
                writeln!(out, "{}", json!({ "result": v }))?;
            } else {
                writeln!(out, "{}", boolean(v))?;
            }
            Ok(0)
        }
        Command::Stats { formula } => {
            let f = parse_formula(formula)?;
            let (res, rep) = eliminate_all_with_report(&f, &guard);
            writeln!(out, "{}", GrowthReportJson::from(&rep).to_json())?;
            res.map(|_| 0).map_err(|e| Failure(format!("{e} (partial report above)")))
        }
        Command::Selftest { instances, samples } => {
            let rep = selftest::run(*instances, *samples, cli.seed);
            writeln!(out, "{}", rep.to_json())?;
            Ok(if rep.passed { 0 } else { 1 })
        }
    }
}

pub fn run_cli(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": msg }));
            }
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pow2qe").chain(args.iter().copied()).map(OsString::from);
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn assignment_syntax() {
        let env = parse_assignment("x=4, y=-3/2").unwrap();
        assert_eq!(env.len(), 2);
        assert!(parse_assignment("x").is_err());
        assert!(parse_assignment("x=1.5").is_err());
    }

    #[test]
    fn eval_rejects_quantifiers_and_unbound() {
        assert_eq!(run(&["eval", "exists x. x = 1"]).0, 2);
        assert_eq!(run(&["eval", "x = 1"]).0, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["decide", "exists x."]).0, 2);
    }

    #[test]
    fn json_errors() {
        let (code, out, _) = run(&["--json", "decide", "x < 1"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"error\""));
    }
}
