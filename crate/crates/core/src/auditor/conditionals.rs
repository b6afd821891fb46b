//! The provability conditionals about a diagonal sentence, audited on
//! bounded readings: the two that a bounded witness settles by
//! construction, the two whose consequents are unbounded, the one honest
//! implication that can fail, and the self-contradiction shape.

use crate::calculus::{Calculus, SearchBudget};
use crate::codec::formula_code;
use crate::diagonal::diag_formula;

use super::{AuditRecord, BoundedTruth, Truth};

/// Audits the conditionals for the diagonal sentence of rank `n`.
///
/// * `"III"` and `"V"`: "if provability (resp. refutability) is witnessed,
///   the sentence (resp. its negation) is provable". On bounded readings
///   the witness is itself the proof, so these hold by construction; the
///   records state whether the antecedent is true at this instance.
/// * `"IV"` and `"VI"`: the consequents assert that no proof exists at all,
///   which no bounded run can establish. `NotEvaluable`, with the surrogate
///   result in the note.
/// * `"I"`: read as "no bounded proof of the sentence implies a bounded
///   proof of its negation". This one can fail honestly, namely when the
///   budget decides neither way.
/// * `"C"`, only when `candidate` is given: the claim that the diagonal
///   sentence of that rank is equivalent to its own negation. Evaluated on
///   bounded truth values; propositionally it can never hold.
pub fn audit_conditionals(
    calc: &Calculus,
    n: usize,
    budget: SearchBudget,
    candidate: Option<usize>,
) -> Vec<AuditRecord> {
    let instance = format!("n={n} budget={budget}");
    let Some(diagonal) = diag_formula(n) else {
        return vec![AuditRecord::new(
            "conditionals:out-of-range",
            &instance,
            Truth::NotEvaluable,
            "the rank exceeds the certified enumeration".to_string(),
        )];
    };
    let proof = calc.bounded_prove(&diagonal, budget);
    let refutation = calc.bounded_prove(&diagonal.negate(), budget);
    let proof_code = proof.as_ref().map(|p| p.code());
    let refutation_code = refutation.as_ref().map(|p| p.code());

    let mut records = Vec::with_capacity(6);

    let antecedent = proof_code.is_none();
    let consequent = refutation_code.is_some();
    records.push(if !antecedent {
        AuditRecord::new(
            "I",
            &instance,
            Truth::Holds,
            "holds vacuously: a bounded proof of the diagonal sentence exists".to_string(),
        )
        .with_witnesses(proof_code.iter().cloned().collect())
    } else if consequent {
        AuditRecord::new(
            "I",
            &instance,
            Truth::Holds,
            "no bounded proof of the diagonal sentence, and its negation is bounded-provable"
                .to_string(),
        )
        .with_witnesses(refutation_code.iter().cloned().collect())
    } else {
        AuditRecord::new(
            "I",
            &instance,
            Truth::Fails,
            "the budget proves neither the diagonal sentence nor its negation, so the bounded \
             reading of the implication fails at this instance; the witness is the sentence's \
             own code"
                .to_string(),
        )
        .with_witnesses(vec![formula_code(&diagonal)])
    });

    records.push(
        AuditRecord::new(
            "III",
            &instance,
            Truth::Holds,
            format!(
                "a bounded provability witness is itself a proof, so the implication holds by \
                 construction; antecedent is {} at this instance",
                proof_code.is_some()
            ),
        )
        .with_witnesses(proof_code.iter().cloned().collect()),
    );
    records.push(AuditRecord::new(
        "IV",
        &instance,
        Truth::NotEvaluable,
        format!(
            "the consequent asserts that no number at all proves the diagonal sentence; \
             bounded surrogate: no proof within budget = {}",
            proof_code.is_none()
        ),
    ));
    records.push(
        AuditRecord::new(
            "V",
            &instance,
            Truth::Holds,
            format!(
                "a bounded refutability witness is itself a proof of the negation, so the \
                 implication holds by construction; antecedent is {} at this instance",
                refutation_code.is_some()
            ),
        )
        .with_witnesses(refutation_code.iter().cloned().collect()),
    );
    records.push(AuditRecord::new(
        "VI",
        &instance,
        Truth::NotEvaluable,
        format!(
            "the consequent asserts that no number at all proves the negation; bounded \
             surrogate: no refutation within budget = {}",
            refutation_code.is_none()
        ),
    ));

    if let Some(k) = candidate {
        records.push(self_equivalence_record(calc, k, budget));
    }
    records
}

/// The record for the claim that the diagonal sentence of rank `k` is
/// equivalent to its own negation.
fn self_equivalence_record(calc: &Calculus, k: usize, budget: SearchBudget) -> AuditRecord {
    let instance = format!("k={k} budget={budget}");
    let Some(diagonal) = diag_formula(k) else {
        return AuditRecord::new(
            "C",
            &instance,
            Truth::NotEvaluable,
            "the rank exceeds the certified enumeration".to_string(),
        );
    };
    let (lhs, lhs_witness) = BoundedTruth::of(calc, &diagonal, budget);
    let (rhs, rhs_witness) = BoundedTruth::of(calc, &diagonal.negate(), budget);
    let witnesses: Vec<_> = lhs_witness.into_iter().chain(rhs_witness).collect();
    match (lhs.decided(), rhs.decided()) {
        (Some(a), Some(b)) if a == b => AuditRecord::new(
            "C",
            &instance,
            Truth::Holds,
            "the sentence and its negation share a bounded truth value, which only an \
             inconsistent axiom base can produce"
                .to_string(),
        )
        .with_witnesses(witnesses),
        (Some(_), Some(_)) => AuditRecord::new(
            "C",
            &instance,
            Truth::Fails,
            "bounded truth values are opposite, as propositional logic forces: no sentence is \
             equivalent to its own negation"
                .to_string(),
        )
        .with_witnesses(witnesses),
        _ => AuditRecord::new(
            "C",
            &instance,
            Truth::NotEvaluable,
            format!(
                "bounded values: sentence={lhs} negation={rhs}; undecided at this budget, \
                 though propositionally the claim cannot hold at any rank"
            ),
        ),
    }
}
