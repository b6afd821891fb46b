//! Empirical comparison of enumerated formulas against bounded membership
//! in the unprovability set: for each candidate rank, how often does the
//! candidate's truth at a numeral agree with the membership evidence?

use crate::calculus::{Calculus, SearchBudget};
use crate::diagonal::{k_member_bounded, phi, KEvidence};
use crate::lang::Term;

use super::{format_sample, AuditRecord, BoundedTruth, Truth};

/// Compares the first `first_m` enumerated formulas against bounded
/// membership evidence over `sample`. One record per candidate rank `c`,
/// claim `"coext:c=<c>"`: `Fails` on the first disagreement (with the
/// deciding witnesses attached), `Holds` when at least one sample point was
/// decided on both sides and none disagreed, `NotEvaluable` when no sample
/// point was decided. Agreement over a finite sample is all a record ever
/// asserts; no record claims true coextension.
pub fn search_coextensive(
    calc: &Calculus,
    first_m: usize,
    sample: &[usize],
    budget: SearchBudget,
) -> Vec<AuditRecord> {
    let instance = format!(
        "M={first_m} sample={} budget={budget}",
        format_sample(sample)
    );
    (1..=first_m)
        .map(|c| candidate_record(calc, c, sample, budget, &instance))
        .collect()
}

fn candidate_record(
    calc: &Calculus,
    c: usize,
    sample: &[usize],
    budget: SearchBudget,
    instance: &str,
) -> AuditRecord {
    let claim = format!("coext:c={c}");
    let Some(candidate) = phi(c) else {
        return AuditRecord::new(
            &claim,
            instance,
            Truth::NotEvaluable,
            "the rank exceeds the certified enumeration".to_string(),
        );
    };
    let var = *candidate
        .free_vars()
        .iter()
        .next()
        .expect("enumerated formulas have one free variable");

    let mut agree = 0usize;
    let mut disagree = 0usize;
    let mut undecided = 0usize;
    let mut first_disagreement = None;
    for &n in sample {
        let at_n = candidate.subst_term(var, &Term::numeral(n as u64));
        let (lhs, lhs_witness) = BoundedTruth::of(calc, &at_n, budget);
        let membership = match k_member_bounded(calc, n, budget) {
            Some(KEvidence::NotInK { proof }) => Some((false, proof)),
            Some(KEvidence::InKSuggested { refutation }) => Some((true, refutation)),
            Some(KEvidence::Unknown) | None => None,
        };
        match (lhs.decided(), membership) {
            (Some(a), Some((b, member_witness))) => {
                if a == b {
                    agree += 1;
                } else {
                    disagree += 1;
                    if first_disagreement.is_none() {
                        let mut witnesses: Vec<_> = lhs_witness.into_iter().collect();
                        witnesses.push(member_witness);
                        first_disagreement = Some((n, witnesses));
                    }
                }
            }
            _ => undecided += 1,
        }
    }

    let tally = format!("agree={agree} disagree={disagree} undecided={undecided}");
    match first_disagreement {
        Some((n, witnesses)) => AuditRecord::new(
            &claim,
            instance,
            Truth::Fails,
            format!(
                "{tally}; first disagreement at n={n}: the candidate's bounded truth differs \
                 from the membership evidence"
            ),
        )
        .with_witnesses(witnesses),
        None if agree > 0 => AuditRecord::new(
            &claim,
            instance,
            Truth::Holds,
            format!("{tally}; agreement over this sample only, not coextension"),
        ),
        None => AuditRecord::new(
            &claim,
            instance,
            Truth::NotEvaluable,
            format!("{tally}; no sample point was decided on both sides"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::new(4, 12, 4).unwrap()
    }

    #[test]
    fn reflexivity_disagrees_with_membership_at_its_own_rank() {
        let calc = Calculus::standard();
        // Rank 30 is reflexivity: true at the numeral of 30, while the
        // diagonal proof shows 30 is not a member.
        let records = search_coextensive(&calc, 30, &[30], budget());
        assert_eq!(records.len(), 30);
        let r30 = records.iter().find(|r| r.claim == "coext:c=30").unwrap();
        assert_eq!(r30.truth, Truth::Fails);
        assert_eq!(r30.witnesses.len(), 2);
        assert!(r30.note.contains("disagree=1"));
    }

    #[test]
    fn refutable_candidates_agree_with_suggested_membership_elsewhere() {
        let calc = Calculus::standard();
        // The rank-2 candidate is false at the numeral of 1, and rank 1 is
        // a suggested member: false versus true disagrees. The rank-1
        // candidate at its own numeral is the diagonal sentence itself,
        // false, against suggested membership, true: also a disagreement.
        let records = search_coextensive(&calc, 2, &[1], budget());
        assert!(records.iter().all(|r| r.truth == Truth::Fails));
    }

    #[test]
    fn undecidable_sample_points_leave_candidates_unevaluated() {
        let calc = Calculus::standard();
        // Sample point 15 is undecided both as membership evidence and for
        // most candidates' bounded truth.
        let records = search_coextensive(&calc, 1, &[15], budget());
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].truth, Truth::NotEvaluable);
        assert!(records[0].note.contains("undecided=1"));
    }

    #[test]
    fn instance_strings_carry_the_full_sample() {
        let calc = Calculus::standard();
        let records = search_coextensive(&calc, 1, &[1, 30], budget());
        assert_eq!(
            records[0].instance,
            format!("M=1 sample=1,30 budget={}", budget())
        );
    }
}
