//! Scanners for the consistency claims about the proof and refutation
//! predicates: no number proves and refutes the same formula, and the
//! characteristic functions of genuine witnesses are exact duals.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::calculus::universe::ProofUniverse;
use crate::calculus::Calculus;
use crate::codec::{formula_code, GoedelNumber};
use crate::lang::Formula;

use super::{calculus_tag, AuditRecord, Truth};

/// Scans every valid proof sequence of length at most `max_len` over the
/// proof universe of `calc` (truncated to `line_cap` lines if given) for
/// violations of the claim that no number proves a formula while also
/// refuting it.
///
/// Two claims come out of one scan:
///
/// * `"L1"`: per sequence, the last line determines the single formula the
///   sequence proves and (when the last line is a negation) the single
///   formula it refutes; those can never have the same code. Each sequence
///   is checked structurally, and one least proof per provable line is
///   re-checked at the number level through the predicates themselves.
/// * `"L1:premise"`: the scan's record of provable lines must not contain a
///   formula together with its negation. The standard calculus passes; a
///   fixture with a negated axiom fails with the two proof codes attached.
pub fn scan_lemma1(
    calc: &Calculus,
    fixture_name: &str,
    line_cap: Option<usize>,
    max_len: usize,
) -> Vec<AuditRecord> {
    let universe = ProofUniverse::build(calc, line_cap);
    let instance = format!(
        "len={} cap={}{}",
        max_len,
        line_cap.map_or_else(|| "none".to_string(), |c| c.to_string()),
        calculus_tag(fixture_name),
    );

    if universe.is_empty() {
        let note = "the proof universe is empty, so the scan holds vacuously".to_string();
        return vec![
            AuditRecord::new("L1", &instance, Truth::Holds, note.clone()),
            AuditRecord::new("L1:premise", &instance, Truth::Holds, note),
        ];
    }

    let sequences = AtomicU64::new(0);
    let violations = AtomicU64::new(0);
    // Least proof sequence per provable line, ordered by (length, lexicographic).
    let least: Mutex<std::collections::BTreeMap<u32, Vec<u32>>> =
        Mutex::new(std::collections::BTreeMap::new());

    universe.for_each_valid_proof(max_len, |seq| {
        sequences.fetch_add(1, Ordering::Relaxed);
        let last_idx = *seq.last().expect("valid sequences are nonempty");
        let last = universe.line(last_idx);
        if let Formula::Not(inner) = last {
            if inner.as_ref() == last {
                violations.fetch_add(1, Ordering::Relaxed);
            }
        }
        let mut map = least.lock().expect("scan lock");
        match map.get_mut(&last_idx) {
            Some(best) if (best.len(), best.as_slice()) <= (seq.len(), seq) => {}
            slot => {
                let owned = seq.to_vec();
                match slot {
                    Some(best) => *best = owned,
                    None => {
                        map.insert(last_idx, owned);
                    }
                }
            }
        }
    });

    let least = least.into_inner().expect("scan lock");
    let sequences = sequences.load(Ordering::Relaxed);
    let violations = violations.load(Ordering::Relaxed);

    // Number-level spot checks: one least proof per provable line, replayed
    // through the predicates on actual codes.
    let mut spot_checks = 0u64;
    let mut number_level_violations = 0u64;
    for (&idx, seq) in &least {
        let x = universe.proof_code_of(seq);
        let y_proved = universe.code(idx);
        if !calc.proves(&x, y_proved) || calc.refutes(&x, y_proved) {
            number_level_violations += 1;
        }
        spot_checks += 1;
        if let Formula::Not(inner) = universe.line(idx) {
            let y_refuted = formula_code(inner);
            if !calc.refutes(&x, &y_refuted) || calc.proves(&x, &y_refuted) {
                number_level_violations += 1;
            }
            spot_checks += 1;
        }
    }

    let l1 = if violations == 0 && number_level_violations == 0 {
        AuditRecord::new(
            "L1",
            &instance,
            Truth::Holds,
            format!(
                "scanned {sequences} sequences; no number proves and refutes the same formula; \
                 {spot_checks} number-level spot checks on least proofs agree"
            ),
        )
    } else {
        AuditRecord::new(
            "L1",
            &instance,
            Truth::Fails,
            format!(
                "{violations} structural and {number_level_violations} number-level violations \
                 among {sequences} sequences"
            ),
        )
        .with_witnesses(
            least
                .values()
                .map(|s| universe.proof_code_of(s))
                .take(3)
                .collect(),
        )
    };

    // Premise scan: a provable line whose negation is also a provable line.
    let provable: std::collections::BTreeSet<u32> = least.keys().copied().collect();
    let mut premise_breaks: Vec<(u32, u32)> = Vec::new();
    for &idx in &provable {
        if let Formula::Not(inner) = universe.line(idx) {
            if let Ok(pos) = universe
                .lines()
                .binary_search_by_key(&inner.to_string(), Formula::to_string)
            {
                let pos = u32::try_from(pos).expect("universe indices fit in u32");
                if provable.contains(&pos) {
                    premise_breaks.push((pos, idx));
                }
            }
        }
    }
    let premise = if premise_breaks.is_empty() {
        AuditRecord::new(
            "L1:premise",
            &instance,
            Truth::Holds,
            format!(
                "among {} provable lines, none is provable together with its negation",
                provable.len()
            ),
        )
    } else {
        let (pos, neg) = premise_breaks[0];
        AuditRecord::new(
            "L1:premise",
            &instance,
            Truth::Fails,
            format!(
                "'{}' and its negation are both provable ({} such pairs)",
                universe.line(pos),
                premise_breaks.len()
            ),
        )
        .with_witnesses(vec![
            universe.proof_code_of(&least[&pos]),
            universe.proof_code_of(&least[&neg]),
        ])
    };

    vec![l1, premise]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("number {w} neither proves nor refutes {y}")]
    NotAWitness { w: GoedelNumber, y: GoedelNumber },
}

/// Checks the characteristic-function duality claims on one genuine witness.
///
/// Precondition: `w` proves `y` or `w` refutes `y`; anything else is a
/// [`WitnessError`], not a record. For a proof witness the records are
/// `"L2"` (the characteristic pair is `(0, 1)`), for a refutation witness
/// `"L3"` (the pair is `(1, 0)`). Both kinds also carry `"L4:I"` (never
/// both predicates at once) and the applicable preconditioned biconditional
/// (`"L4:III"` for proofs, `"L4:II"` for refutations), plus both
/// dropped-precondition variants, which still hold at genuine witnesses
/// because the two predicates are exactly opposite there.
pub fn check_char_duality(
    calc: &Calculus,
    w: &GoedelNumber,
    y: &GoedelNumber,
) -> Result<Vec<AuditRecord>, WitnessError> {
    let b = calc.proves(w, y);
    let refutes = calc.refutes(w, y);
    if !b && !refutes {
        return Err(WitnessError::NotAWitness {
            w: w.clone(),
            y: y.clone(),
        });
    }

    let cb = calc.proof_char(w, y);
    let cw = calc.refutation_char(w, y);
    let instance = format!("w={w} y={y}");
    let wit = vec![w.clone()];
    let rec = |claim: &str, ok: bool, note: String| {
        let truth = if ok { Truth::Holds } else { Truth::Fails };
        AuditRecord::new(claim, &instance, truth, note).with_witnesses(wit.clone())
    };

    let mut records = Vec::with_capacity(5);
    if b {
        records.push(rec(
            "L2",
            cb == 0 && cw == 1,
            format!("proof witness: characteristic pair is ({cb}, {cw}), expected (0, 1)"),
        ));
        records.push(rec(
            "L4:III",
            b == !refutes,
            "precondition met (w is a proof code): proving is equivalent to not refuting".into(),
        ));
    } else {
        records.push(rec(
            "L3",
            cw == 0 && cb == 1,
            format!("refutation witness: characteristic pair is ({cb}, {cw}), expected (1, 0)"),
        ));
        records.push(rec(
            "L4:II",
            refutes == !b,
            "precondition met (w is a refutation code): refuting is equivalent to not proving"
                .into(),
        ));
    }
    records.push(rec(
        "L4:I",
        !(b && refutes),
        format!("predicates at this witness: proves={b} refutes={refutes}; never both"),
    ));
    records.push(rec(
        "L4:II:dropped",
        refutes == !b,
        "precondition dropped: holds here because a genuine witness decides exactly one way; \
         a number that is neither a proof nor a refutation would break this biconditional"
            .into(),
    ));
    records.push(rec(
        "L4:III:dropped",
        b == !refutes,
        "precondition dropped: holds here because a genuine witness decides exactly one way; \
         a number that is neither a proof nor a refutation would break this biconditional"
            .into(),
    ));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auditor::calculus_fixture;
    use crate::calculus::SearchBudget;
    use crate::lang::parse_formula;

    fn budget() -> SearchBudget {
        SearchBudget::new(4, 12, 4).unwrap()
    }

    #[test]
    fn lemma_one_holds_over_the_standard_universe() {
        let calc = Calculus::standard();
        let records = scan_lemma1(&calc, "standard", Some(120), 2);
        assert_eq!(records.len(), 2);
        let l1 = records.iter().find(|r| r.claim == "L1").unwrap();
        assert_eq!(l1.truth, Truth::Holds);
        assert!(l1.note.contains("number-level spot checks"));
        let premise = records.iter().find(|r| r.claim == "L1:premise").unwrap();
        assert_eq!(premise.truth, Truth::Holds);
        assert!(l1.instance.contains("len=2 cap=120"));
        assert!(!l1.instance.contains("calculus="));
    }

    #[test]
    fn empty_universe_holds_vacuously() {
        let calc = Calculus::standard();
        let records = scan_lemma1(&calc, "standard", Some(0), 3);
        assert!(records.iter().all(|r| r.truth == Truth::Holds));
        assert!(records[0].note.contains("vacuously"));
    }

    #[test]
    fn negated_axiom_fixture_breaks_the_premise() {
        let calc = calculus_fixture("negated-first-axiom").unwrap();
        // No line cap: the negated axiom spells with a late-sorting '~', so
        // a truncated universe would drop it and mask the violation.
        let records = scan_lemma1(&calc, "negated-first-axiom", None, 1);
        let premise = records.iter().find(|r| r.claim == "L1:premise").unwrap();
        assert_eq!(premise.truth, Truth::Fails);
        assert_eq!(premise.witnesses.len(), 2);
        assert!(premise.instance.contains("calculus=negated-first-axiom"));
        // The formula-level claim still holds: no single sequence proves and
        // refutes the same formula, even in an inconsistent calculus.
        let l1 = records.iter().find(|r| r.claim == "L1").unwrap();
        assert_eq!(l1.truth, Truth::Holds);
    }

    #[test]
    fn duality_records_for_a_proof_witness() {
        let calc = Calculus::standard();
        let target = parse_formula("x0=x0").unwrap();
        let proof = calc.bounded_prove(&target, budget()).unwrap();
        let y = formula_code(&target);
        let records = check_char_duality(&calc, &proof.code(), &y).unwrap();
        let claims: Vec<&str> = records.iter().map(|r| r.claim.as_str()).collect();
        assert_eq!(
            claims,
            ["L2", "L4:III", "L4:I", "L4:II:dropped", "L4:III:dropped"]
        );
        assert!(records.iter().all(|r| r.truth == Truth::Holds));
        assert!(records.iter().all(|r| r.witnesses == vec![proof.code()]));
    }

    #[test]
    fn duality_records_for_a_refutation_witness() {
        let calc = Calculus::standard();
        let target = parse_formula("S(0)=0").unwrap();
        let refutation = calc.bounded_prove(&target.negate(), budget()).unwrap();
        let y = formula_code(&target);
        assert!(calc.refutes(&refutation.code(), &y));
        let records = check_char_duality(&calc, &refutation.code(), &y).unwrap();
        let claims: Vec<&str> = records.iter().map(|r| r.claim.as_str()).collect();
        assert_eq!(
            claims,
            ["L3", "L4:II", "L4:I", "L4:II:dropped", "L4:III:dropped"]
        );
        assert!(records.iter().all(|r| r.truth == Truth::Holds));
    }

    #[test]
    fn non_witnesses_are_rejected_before_any_record() {
        let calc = Calculus::standard();
        let y = formula_code(&parse_formula("x0=x0").unwrap());
        let err = check_char_duality(&calc, &GoedelNumber::from(0u64), &y).unwrap_err();
        assert!(err.to_string().contains("neither proves nor refutes"));
    }
}
