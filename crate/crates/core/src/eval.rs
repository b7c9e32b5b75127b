//! Exact evaluation of terms and quantifier-free formulas, ground decisions, and
//! a bounded witness search used by the test oracles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::rational::{self, int, pow2};
use crate::term::{Name, Term};
use crate::upoly::{refine, UPoly};

pub type Assignment = BTreeMap<Name, BigRational>;

pub fn eval_term(t: &Term, env: &Assignment) -> Result<BigRational> {
    Ok(match t {
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Unbound(v.to_string()))?,
        Term::Const(c) => c.clone(),
        Term::Pow2(k) => pow2(*k),
        Term::Add(a, b) => eval_term(a, env)? + eval_term(b, env)?,
        Term::Sub(a, b) => eval_term(a, env)? - eval_term(b, env)?,
        Term::Mul(a, b) => {
            let x = eval_term(a, env)?;
            if x.is_zero() {
                // Still require b to be evaluable so unbound variables surface.
                eval_term(b, env)?;
                return Ok(x);
            }
            x * eval_term(b, env)?
        }
        Term::Div(a, b) => {
            let d = eval_term(b, env)?;
            let n = eval_term(a, env)?;
            if d.is_zero() {
                BigRational::zero()
            } else {
                n / d
            }
        }
        Term::Lambda(a) => rational::lambda(&eval_term(a, env)?),
    })
}

pub fn eval_atom(a: &Atom, env: &Assignment) -> Result<bool> {
    Ok(match a {
        Atom::Eq(l, r) => eval_term(l, env)? == eval_term(r, env)?,
        Atom::Lt(l, r) => eval_term(l, env)? < eval_term(r, env)?,
        Atom::Dn { n, arg } => rational::dn_holds(*n, &eval_term(arg, env)?),
    })
}

/// Truth value of a quantifier-free formula under `env`.
pub fn eval_qf(f: &Formula, env: &Assignment) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => eval_atom(a, env)?,
        Formula::Not(a) => !eval_qf(a, env)?,
        Formula::And(a, b) => eval_qf(a, env)? && eval_qf(b, env)?,
        Formula::Or(a, b) => eval_qf(a, env)? || eval_qf(b, env)?,
        Formula::Exists(..) | Formula::Forall(..) => {
            return Err(Error::Contract("eval_qf needs a quantifier-free formula".into()))
        }
    })
}

/// Decides a quantifier-free sentence.
pub fn decide_ground_sentence(f: &Formula) -> Result<bool> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::Unbound(v.to_string()));
    }
    eval_qf(f, &Assignment::new())
}

/// Bounds for [`witness_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub k_min: i64,
    pub k_max: i64,
    /// Largest odd mantissa `m` tried in candidates `± m · 2^k`.
    pub max_mantissa: u64,
    /// Hard cap on the number of candidates evaluated.
    pub max_candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { k_min: -64, k_max: 64, max_mantissa: 1 << 16, max_candidates: 2_000_000 }
    }
}

impl SearchBudget {
    /// A small budget suitable for inner loops of tests.
    pub fn quick() -> Self {
        SearchBudget { k_min: -12, k_max: 12, max_mantissa: 15, max_candidates: 4_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessResult {
    Found(BigRational),
    /// No witness among the candidates. `exhaustive` is set when the formula
    /// forces `x` to be a power of two and every power in the grid was tried.
    NoneFound { exhaustive: bool },
}

impl WitnessResult {
    pub fn found(&self) -> bool {
        matches!(self, WitnessResult::Found(_))
    }
}

/// Reads `t` as a univariate polynomial in `x` after evaluating everything else under `env`.
pub fn univariate(t: &Term, x: &str, env: &Assignment) -> Option<UPoly> {
    if !t.contains_var(x) {
        return eval_term(t, env).ok().map(UPoly::constant);
    }
    Some(match t {
        Term::Var(_) => UPoly::new(alloc::vec![BigRational::zero(), BigRational::one()]),
        Term::Add(a, b) => univariate(a, x, env)?.add(&univariate(b, x, env)?),
        Term::Sub(a, b) => univariate(a, x, env)?.sub(&univariate(b, x, env)?),
        Term::Mul(a, b) => univariate(a, x, env)?.mul(&univariate(b, x, env)?),
        Term::Div(a, b) if !b.contains_var(x) => {
            let d = eval_term(b, env).ok()?;
            if d.is_zero() {
                UPoly::default()
            } else {
                univariate(a, x, env)?.scale(&d.recip())
            }
        }
        _ => return None,
    })
}

fn root_candidates(f: &Formula, x: &str, env: &Assignment) -> Vec<BigRational> {
    let mut out = Vec::new();
    let eps = pow2(-24);
    f.visit_atoms(&mut |a| {
        let diff = match a {
            Atom::Eq(l, r) | Atom::Lt(l, r) => Term::sub(l.clone(), r.clone()),
            Atom::Dn { .. } => return,
        };
        if let Some(p) = univariate(&diff, x, env) {
            if p.degree() == 0 {
                return;
            }
            let sq = p.squarefree();
            if sq.degree() == 1 {
                out.push(-&sq.0[0] / &sq.0[1]);
                return;
            }
            for iv in sq.isolate_roots() {
                if iv.is_exact() {
                    out.push(iv.lo.clone());
                    continue;
                }
                let fine = refine(&sq, &iv, &eps);
                out.push(fine.lo.clone());
                out.push(fine.hi.clone());
                out.push(fine.midpoint());
            }
        }
    });
    out.sort();
    out.dedup();
    let mut mids: Vec<BigRational> = out.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    if let (Some(first), Some(last)) = (out.first().cloned(), out.last().cloned()) {
        mids.push(first - BigRational::one());
        mids.push(last + BigRational::one());
    }
    out.extend(mids);
    out
}

/// Whether a top-level conjunct forces `x` to be a power of two.
fn forces_power(f: &Formula, x: &str) -> bool {
    f.conjuncts().iter().any(|c| {
        matches!(c, Formula::Atom(Atom::Dn { arg: Term::Var(v), .. }) if &**v == x)
    })
}

/// Searches for a value of `x` making the quantifier-free `f` true under `env`.
pub fn witness_search(f: &Formula, x: &str, env: &Assignment, budget: &SearchBudget) -> Result<WitnessResult> {
    let mut env = env.clone();
    let name: Name = Name::from(x);
    let tried = core::cell::Cell::new(0usize);
    let mut seen = BTreeSet::new();
    let mut test = |v: BigRational, env: &mut Assignment| -> Result<Option<BigRational>> {
        if !seen.insert(v.clone()) {
            return Ok(None);
        }
        tried.set(tried.get() + 1);
        env.insert(name.clone(), v.clone());
        Ok(if eval_qf(f, env)? { Some(v) } else { None })
    };
    let power_only = forces_power(f, x);
    if !power_only {
        for v in root_candidates(f, x, &env) {
            if let Some(w) = test(v, &mut env)? {
                return Ok(WitnessResult::Found(w));
            }
        }
        if let Some(w) = test(BigRational::zero(), &mut env)? {
            return Ok(WitnessResult::Found(w));
        }
    }
    let mut ks: Vec<i64> = (budget.k_min..=budget.k_max).collect();
    ks.sort_by_key(|k| (k.abs(), *k < 0));
    let mut m = 1u64;
    while m <= budget.max_mantissa {
        for &k in &ks {
            let base = pow2(k) * int(m as i64);
            for v in [base.clone(), -base] {
                if power_only && (m != 1 || v.is_negative()) {
                    continue;
                }
                if tried.get() >= budget.max_candidates {
                    return Ok(WitnessResult::NoneFound { exhaustive: false });
                }
                if let Some(w) = test(v, &mut env)? {
                    return Ok(WitnessResult::Found(w));
                }
            }
        }
        if power_only {
            break;
        }
        m += 2;
    }
    Ok(WitnessResult::NoneFound { exhaustive: power_only })
}
