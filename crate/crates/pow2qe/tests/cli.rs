//! The command-line binary, run as a subprocess.

use std::process::{Command, Output};

use num_rational::BigRational;
use pow2qe::parse_formula;
use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::Name;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pow2qe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decide_exit_codes() {
    let t = run(&["decide", "exists x. A(x) and 3 < x and x < 5"]);
    assert_eq!((t.status.code(), stdout(&t).trim()), (Some(0), "true"));
    let f = run(&["decide", "exists x. A(x) and 4 < x and x < 8"]);
    assert_eq!((f.status.code(), stdout(&f).trim()), (Some(1), "false"));
    let d = run(&["decide", "exists x. A(x) and D[2](x) and not D[4](x)"]);
    assert_eq!(d.status.code(), Some(0));
    let e = run(&["decide", "x < 1"]);
    assert_eq!(e.status.code(), Some(2));
    assert!(!e.stderr.is_empty());
}

#[test]
fn eval_floor_power() {
    let o = run(&["eval", "L(x) = 4", "--assign", "x=5"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let o = run(&["eval", "L(x) = 4 and y < 1", "--assign", "x=8,y=3/2"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "false"));
    assert_eq!(run(&["eval", "L(x) = 4"]).status.code(), Some(2));
}

#[test]
fn qe_output_matches_direct_evaluation() {
    let o = run(&["qe", "exists y. A(y) and x < y and y < 2*x"]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_formula(stdout(&o).trim()).unwrap();
    assert!(g.is_quantifier_free());
    // Between x and 2x lies a power of two unless x is itself one (or x <= 0).
    for (n, d, expect) in [(3, 1, true), (4, 1, false), (5, 2, true), (1, 2, false), (3, 8, true), (0, 1, false), (-3, 1, false)] {
        let env: Assignment = [(Name::from("x"), BigRational::new(n.into(), d.into()))].into_iter().collect();
        assert_eq!(eval_qf(&g, &env).unwrap(), expect, "x = {n}/{d} in {g}");
    }
}

#[test]
fn stats_report_fields() {
    let o = run(&["stats", "exists y. A(y) and y <= x and x < 2*y"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let its = v["iterations"].as_array().expect("iterations array");
    assert!(!its.is_empty());
    assert!(its[0].get("length_Dn_weighted").is_some());
}

#[test]
fn guardrail_exit_with_partial_report() {
    let o = run(&["--max-size", "5", "stats", "exists y. A(y) and y <= x and x < 2*y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(serde_json::from_str::<serde_json::Value>(stdout(&o).trim()).is_ok());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(run(&["--max-size", "5", "qe", "exists y. A(y) and y <= x and x < 2*y"]).status.code(), Some(2));
}

#[test]
fn identical_runs_identical_bytes() {
    for args in [
        &["qe", "exists y. D[3](y) and z < y and y < x"][..],
        &["--json", "qe", "exists y. A(y) and L(y*x) = 2*y"][..],
        &["--json", "decide", "forall x. forall y. x < y -> exists z. x < z and z < y"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

/// Stats carry wall-clock timings; everything else must repeat exactly.
#[test]
fn stats_repeat_up_to_timings() {
    let args = ["stats", "exists y. A(y) and L(y*x) = 2*y"];
    let masked = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        for it in v["iterations"].as_array_mut().unwrap() {
            it["millis"] = 0.into();
        }
        v.to_string()
    };
    assert_eq!(masked(run(&args)), masked(run(&args)));
}

#[test]
fn selftest_json() {
    let o = run(&["selftest", "--instances", "3", "--samples", "20", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["lemmas"].as_array().unwrap().len(), 13);
    assert_eq!(o.status.code(), Some(if v["passed"].as_bool().unwrap() { 0 } else { 1 }));
}
