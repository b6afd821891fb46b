//! The identity-law tail of the diagonal argument: if the sentence of rank
//! `k` at the numeral of `n` is equivalent to the negated diagonal sentence
//! of `n`, the two ranks must differ.

use crate::calculus::{Calculus, SearchBudget};
use crate::diagonal::phi;
use crate::lang::{Formula, Term};

use super::{AuditRecord, BoundedTruth, Truth};

/// Substitutes the numeral of `n` for the single free variable.
fn at_numeral(f: &Formula, n: usize) -> Formula {
    let v = *f
        .free_vars()
        .iter()
        .next()
        .expect("enumerated formulas have one free variable");
    f.subst_term(v, &Term::numeral(n as u64))
}

/// Audits the three-record identity argument at ranks `k` and `n`.
///
/// * `"identity:14"`: the biconditional "rank-`k` sentence at the numeral
///   of `n` is true exactly when the diagonal sentence of `n` is false",
///   on bounded truth values.
/// * `"identity:15"`: the identity-law instance "if that biconditional
///   holds then k differs from n". Its failure would mean one sentence is
///   equivalent to its own negation, so a `Fails` here exposes an
///   inconsistent axiom base.
/// * `"identity:16"`: the conclusion "k differs from n", evaluated only
///   when the biconditional is confirmed.
///
/// When either side is undecided at the budget, all three records are
/// `NotEvaluable`: the argument has nothing bounded to stand on.
pub fn audit_identity(
    calc: &Calculus,
    k: usize,
    n: usize,
    budget: SearchBudget,
) -> Vec<AuditRecord> {
    let instance = format!("k={k} n={n} budget={budget}");
    let (Some(phi_k), Some(phi_n)) = (phi(k), phi(n)) else {
        return vec![AuditRecord::new(
            "identity:out-of-range",
            &instance,
            Truth::NotEvaluable,
            "a rank exceeds the certified enumeration".to_string(),
        )];
    };
    let cross = at_numeral(&phi_k, n);
    let negated_diagonal = at_numeral(&phi_n, n).negate();
    let (lhs, lhs_witness) = BoundedTruth::of(calc, &cross, budget);
    let (rhs, rhs_witness) = BoundedTruth::of(calc, &negated_diagonal, budget);
    let witnesses: Vec<_> = lhs_witness.into_iter().chain(rhs_witness).collect();

    let (Some(a), Some(b)) = (lhs.decided(), rhs.decided()) else {
        let note = format!(
            "bounded values: '{cross}'={lhs}, '{negated_diagonal}'={rhs}; the argument needs \
             both sides decided"
        );
        return vec![
            AuditRecord::new("identity:14", &instance, Truth::NotEvaluable, note.clone()),
            AuditRecord::new("identity:15", &instance, Truth::NotEvaluable, note.clone()),
            AuditRecord::new("identity:16", &instance, Truth::NotEvaluable, note),
        ];
    };

    let biconditional = a == b;
    let fourteen = AuditRecord::new(
        "identity:14",
        &instance,
        if biconditional {
            Truth::Holds
        } else {
            Truth::Fails
        },
        format!("bounded truth of '{cross}' is {a}, bounded truth of '{negated_diagonal}' is {b}"),
    )
    .with_witnesses(witnesses.clone());

    let fifteen = if !biconditional || k != n {
        AuditRecord::new(
            "identity:15",
            &instance,
            Truth::Holds,
            if biconditional {
                format!("the biconditional holds and the ranks differ (k={k}, n={n})")
            } else {
                "holds vacuously: the biconditional fails at this instance".to_string()
            },
        )
        .with_witnesses(if biconditional {
            witnesses.clone()
        } else {
            Vec::new()
        })
    } else {
        AuditRecord::new(
            "identity:15",
            &instance,
            Truth::Fails,
            "a sentence shares the bounded truth value of its own negation at equal ranks, \
             which only an inconsistent axiom base can produce"
                .to_string(),
        )
        .with_witnesses(witnesses.clone())
    };

    let sixteen = if biconditional {
        AuditRecord::new(
            "identity:16",
            &instance,
            if k != n { Truth::Holds } else { Truth::Fails },
            format!("the biconditional forces distinct ranks; here k={k} and n={n}"),
        )
        .with_witnesses(witnesses)
    } else {
        AuditRecord::new(
            "identity:16",
            &instance,
            Truth::NotEvaluable,
            "the biconditional fails at this instance, so the conclusion is not forced".to_string(),
        )
    };

    vec![fourteen, fifteen, sixteen]
}
