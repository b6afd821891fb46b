//! Depth-bounded evaluation of closed formulas over the natural numbers.
//!
//! Equalities between closed terms are decided exactly. A universal
//! quantifier is only sampled at `0..=depth`, so it can report a definite
//! counterexample but never a definite truth: the outcome for a formula
//! that survives sampling is [`EvalOutcome::Unknown`].

use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::lang::{Formula, Term, VarIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalOutcome {
    True,
    False,
    Unknown,
}

impl EvalOutcome {
    fn not(self) -> EvalOutcome {
        match self {
            EvalOutcome::True => EvalOutcome::False,
            EvalOutcome::False => EvalOutcome::True,
            EvalOutcome::Unknown => EvalOutcome::Unknown,
        }
    }

    fn or(self, rhs: EvalOutcome) -> EvalOutcome {
        match (self, rhs) {
            (EvalOutcome::True, _) | (_, EvalOutcome::True) => EvalOutcome::True,
            (EvalOutcome::False, EvalOutcome::False) => EvalOutcome::False,
            _ => EvalOutcome::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula has free variables and cannot be evaluated")]
pub struct OpenFormulaError;

/// Evaluates a closed formula, instantiating each universal quantifier at
/// `0..=depth` only.
pub fn eval_closed(f: &Formula, depth: u64) -> Result<EvalOutcome, OpenFormulaError> {
    if !f.is_closed() {
        return Err(OpenFormulaError);
    }
    let mut env = BTreeMap::new();
    Ok(eval(f, depth, &mut env))
}

fn eval(f: &Formula, depth: u64, env: &mut BTreeMap<VarIndex, BigUint>) -> EvalOutcome {
    match f {
        Formula::Eq(a, b) => {
            if term_value(a, env) == term_value(b, env) {
                EvalOutcome::True
            } else {
                EvalOutcome::False
            }
        }
        Formula::Not(p) => eval(p, depth, env).not(),
        Formula::Or(p, q) => eval(p, depth, env).or(eval(q, depth, env)),
        Formula::Forall(v, body) => {
            let prior = env.remove(v);
            let mut outcome = EvalOutcome::Unknown;
            let mut k = BigUint::ZERO;
            for _ in 0..=depth {
                env.insert(*v, k.clone());
                if eval(body, depth, env) == EvalOutcome::False {
                    outcome = EvalOutcome::False;
                    break;
                }
                k += BigUint::one();
            }
            match prior {
                Some(old) => env.insert(*v, old),
                None => env.remove(v),
            };
            outcome
        }
    }
}

fn term_value(t: &Term, env: &BTreeMap<VarIndex, BigUint>) -> BigUint {
    match t {
        Term::Zero => BigUint::ZERO,
        Term::Var(v) => env
            .get(v)
            .cloned()
            .expect("closure was checked, so every variable is bound"),
        Term::Succ(a) => term_value(a, env) + BigUint::one(),
        Term::Add(a, b) => term_value(a, env) + term_value(b, env),
        Term::Mul(a, b) => term_value(a, env) * term_value(b, env),
    }
}
