//! Acceptance suite: one PASS/FAIL line per criterion. Budgets and sizes are
//! fixed here; a criterion over budget fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pow2qe::harness::lemmas::{check_lemma_equivalence, detects, run_suite, Lemma};
use pow2qe::harness::mutation::Mutation;
use pow2qe::harness::{corpus, growth, rcf_instances, theta};
use pow2qe_core::exponent::decide_exists_theta;
use pow2qe_core::limits::Guard;

const SEED: u64 = 1;

const LEMMA_INSTANCES: usize = 50;
const LEMMA_SAMPLES: usize = 200;
const LEMMA_BUDGET: Duration = Duration::from_secs(5 * 60);

const THETA_CONSTRAINTS: u64 = 500;
const THETA_MAX_LCM: u64 = 360;
/// Enumeration covers `[-span, 2·span)`, more than one full period either side.
const THETA_SPAN: i64 = 400;
const THETA_BUDGET: Duration = Duration::from_secs(30);

const RCF_SAMPLES: usize = 200;
const RCF_BUDGET: Duration = Duration::from_secs(10 * 60);

const CORPUS_MIN: usize = 50;
const CORPUS_BUDGET: Duration = Duration::from_secs(30 * 60);

const POST_INSTANCES: usize = 50;
const GROWTH_CASES: usize = 10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn criterion(n: u32, name: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let took = start.elapsed();
    let passed = out.passed && took <= budget;
    let budget = if budget == Duration::MAX { "none".to_string() } else { format!("{}s", budget.as_secs()) };
    println!(
        "criterion {n} {} {name}: {} ({:.1}s, budget {budget})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
    );
    passed
}

fn lemma_suite() -> Outcome {
    let reports = run_suite(LEMMA_INSTANCES, LEMMA_SAMPLES, SEED);
    let mut detail = format!("{} checks x {LEMMA_INSTANCES} instances x {LEMMA_SAMPLES} samples", reports.len());
    let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    for r in &bad {
        detail.push_str(&format!(
            "\n    {}: full {}/{}, postcondition violations {}, failures {}",
            r.lemma.name(),
            r.full_instances,
            r.instances,
            r.postcondition_violations,
            r.failures.len()
        ));
        if let Some(f) = r.failures.first() {
            detail.push_str(&format!("\n      {f}"));
        }
    }
    let samples: usize = reports.iter().map(|r| r.samples).sum();
    detail.push_str(&format!(", {samples} samples evaluated"));
    Outcome { passed: reports.len() == 13 && bad.is_empty(), detail }
}

fn exponent_decision() -> Outcome {
    let mut errors = Vec::new();
    let mut unsat = 0;
    for seed in 0..THETA_CONSTRAINTS {
        let c = theta::gen_constraint(seed, THETA_MAX_LCM);
        if decide_exists_theta(&c) == pow2qe_core::exponent::ThetaDecision::Unsat {
            unsat += 1;
        }
        if let Err(e) = theta::check_against_enumeration(&c, THETA_SPAN) {
            errors.push(format!("seed {seed}: {e}"));
        }
    }
    Outcome {
        passed: errors.is_empty(),
        detail: format!(
            "{THETA_CONSTRAINTS} constraints (lcm <= {THETA_MAX_LCM}, {unsat} unsatisfiable), {} disagreements{}",
            errors.len(),
            errors.iter().take(3).map(|e| format!("\n    {e}")).collect::<String>()
        ),
    }
}

fn rcf_kernel() -> Outcome {
    let rep = rcf_instances::run(RCF_SAMPLES, SEED, &Guard::default());
    let mut detail = format!(
        "{} instances x {RCF_SAMPLES} samples, {} disagreements, {} errors, {} of {} oracle answers proven",
        rep.instances,
        rep.disagreements.len(),
        rep.errors.len(),
        rep.exact_samples,
        rep.samples
    );
    for d in rep.disagreements.iter().chain(&rep.errors).take(5) {
        detail.push_str(&format!("\n    {d}"));
    }
    Outcome { passed: rep.instances == 30 && rep.passed(), detail }
}

fn sentence_corpus() -> Outcome {
    let items = corpus::run_corpus(&Guard::default());
    let disagree: Vec<_> = items.iter().filter(|i| !i.agrees()).collect();
    let exact = items.iter().filter(|i| matches!(&i.oracle, Ok(v) if v.exact)).count();
    let density = items.iter().any(|i| i.text == corpus::DENSITY_AXIOM && i.agrees());
    let mut detail = format!(
        "{} sentences, {} disagreements, {exact} oracle answers proven, density axiom {}",
        items.len(),
        disagree.len(),
        if density { "agrees" } else { "MISSING OR WRONG" }
    );
    for i in disagree.iter().take(5) {
        detail.push_str(&format!("\n    {}: pipeline {:?}, oracle {:?}", i.text, i.pipeline, i.oracle));
    }
    Outcome { passed: items.len() >= CORPUS_MIN && disagree.is_empty() && density, detail }
}

fn postconditions() -> Outcome {
    let guard = Guard::default();
    let mut problems = Vec::new();
    let open = corpus::OPEN.iter().copied().chain(growth::PAIRS.iter().flat_map(|(a, b)| [*a, *b]));
    let mut checked = 0;
    for text in open {
        checked += 1;
        match corpus::open_postconditions(text, &guard) {
            Ok((_, bad)) if bad.is_empty() => {}
            Ok((_, bad)) => problems.push(format!("{text}: not {}", bad.join(", "))),
            Err(e) => problems.push(format!("{text}: {e}")),
        }
    }
    for lemma in [Lemma::MakeSimple, Lemma::Squeeze] {
        let rep = check_lemma_equivalence(lemma, POST_INSTANCES, 1, SEED + 1, None);
        if rep.postcondition_violations > 0 || rep.full_instances != rep.instances {
            problems.push(format!(
                "{}: {} postcondition violations, {} of {} instances built",
                lemma.name(),
                rep.postcondition_violations,
                rep.full_instances,
                rep.instances
            ));
        }
    }
    Outcome {
        passed: problems.is_empty(),
        detail: format!(
            "{checked} eliminations quantifier- and division-free, make-simple and squeeze outputs on {POST_INSTANCES} instances each, {} problems{}",
            problems.len(),
            problems.iter().map(|p| format!("\n    {p}")).collect::<String>()
        ),
    }
}

fn growth_stats() -> Outcome {
    let cases = growth::corpus(&Guard::default());
    let v = growth::violations(&cases);
    let peaks: Vec<String> = cases.chunks(2).map(|p| format!("{:?}->{:?}", p[0].peak(), p[1].peak())).collect();
    Outcome {
        passed: cases.len() == GROWTH_CASES && v.is_empty(),
        detail: format!(
            "{} formulas, peak weighted length one->two quantifiers [{}], {} violations{}",
            cases.len(),
            peaks.join(", "),
            v.len(),
            v.iter().map(|p| format!("\n    {p}")).collect::<String>()
        ),
    }
}

fn mutations() -> Outcome {
    let missed: Vec<&str> =
        Mutation::ALL.iter().filter(|&&m| !detects(m, LEMMA_INSTANCES, LEMMA_SAMPLES, SEED)).map(|m| m.name()).collect();
    Outcome {
        passed: Mutation::ALL.len() == 10 && missed.is_empty(),
        detail: format!("{} mutations, missed: [{}]", Mutation::ALL.len(), missed.join(", ")),
    }
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "lemma equivalence", LEMMA_BUDGET, lemma_suite),
        criterion(2, "exponent decision", THETA_BUDGET, exponent_decision),
        criterion(3, "field kernel", RCF_BUDGET, rcf_kernel),
        criterion(4, "sentence corpus", CORPUS_BUDGET, sentence_corpus),
        criterion(5, "syntactic postconditions", Duration::MAX, postconditions),
        criterion(6, "growth reports", Duration::MAX, growth_stats),
        criterion(7, "mutation detection", Duration::MAX, mutations),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
