//! Random exponent constraints and a brute-force oracle.

use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::exponent::{decide_exists_theta, ExponentConstraint, ThetaDecision};
use pow2qe_core::rational::{lcm_u64, pow2};
use pow2qe_core::term::Name;
use rand::Rng;

use super::sample::{rng, Rng8};

/// Constraints whose moduli have lcm at most `max_lcm`.
pub fn gen_constraint(seed: u64, max_lcm: u64) -> ExponentConstraint {
    let mut r = rng(seed);
    let mut lcm = 1;
    gen(&mut r, 3, max_lcm, &mut lcm)
}

fn gen(r: &mut Rng8, depth: u32, max_lcm: u64, lcm: &mut u64) -> ExponentConstraint {
    if depth == 0 || r.gen_bool(0.3) {
        // Reuse an existing modulus half the time so conflicts are common.
        let n = loop {
            let n = if *lcm > 1 && r.gen_bool(0.5) { *lcm as u32 } else { r.gen_range(1..=40u32) };
            if lcm_u64(*lcm, n as u64) <= max_lcm {
                break n;
            }
        };
        *lcm = lcm_u64(*lcm, n as u64);
        let atom = ExponentConstraint::atom(n, r.gen_range(-50..=50));
        return if r.gen_bool(0.3) { ExponentConstraint::not(atom) } else { atom };
    }
    let k = r.gen_range(2..=4);
    let parts = (0..k).map(|_| gen(r, depth - 1, max_lcm, lcm)).collect();
    match r.gen_range(0..5) {
        0 => ExponentConstraint::Or(parts),
        1 => ExponentConstraint::not(ExponentConstraint::And(parts)),
        _ => ExponentConstraint::And(parts),
    }
}

/// Truth at `x = 2^j` through the formula semantics.
fn holds_at(f: &pow2qe_core::Formula, j: i64) -> bool {
    let env: Assignment = [(Name::from("x"), pow2(j))].into_iter().collect();
    eval_qf(f, &env).expect("closed formula")
}

/// Checks [`decide_exists_theta`] against enumeration of `j ∈ [-span, 2·span)`,
/// `span >= lcm`. For a `Sat` answer, every window of `period` consecutive
/// exponents starting in `[-span, span)` must contain a solution.
pub fn check_against_enumeration(theta: &ExponentConstraint, span: i64) -> Result<(), String> {
    let f = theta.to_formula("x");
    let truth: Vec<bool> = (-span..2 * span).map(|j| holds_at(&f, j)).collect();
    let any = truth.iter().any(|&b| b);
    match decide_exists_theta(theta) {
        ThetaDecision::Unsat if any => Err("reported unsatisfiable but enumeration found a solution".into()),
        ThetaDecision::Unsat => Ok(()),
        ThetaDecision::Sat { .. } if !any => Err("reported satisfiable but enumeration found none".into()),
        ThetaDecision::Sat { period } => {
            let p = period as usize;
            if p as i64 > span {
                return Err(format!("period {period} exceeds the enumeration span"));
            }
            match (0..span as usize).find(|&s| !truth[s..s + p].iter().any(|&b| b)) {
                Some(s) => Err(format!("window of length {period} from 2^{} has no solution", s as i64 - span)),
                None => Ok(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_is_respected() {
        for seed in 0..50 {
            assert!(gen_constraint(seed, 360).lcm_modulus() <= 360);
        }
    }

    #[test]
    fn mixes_sat_and_unsat() {
        let unsat = (0..200)
            .filter(|&s| decide_exists_theta(&gen_constraint(s, 360)) == ThetaDecision::Unsat)
            .count();
        assert!(unsat > 10 && unsat < 190, "{unsat}");
    }
}
