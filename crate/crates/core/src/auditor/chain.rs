//! The step-by-step equivalence chain from "the diagonal sentence of rank
//! `n` is unprovable" down to "its negation is provable", audited one link
//! at a time on bounded readings.

use crate::calculus::{Calculus, SearchBudget};
use crate::codec::{formula_code, GoedelNumber};
use crate::diagonal::diag_formula;

use super::{AuditRecord, Truth};

/// The seven steps, in chain order. Each knows its bounded reading; the
/// first two and the refutation-existence step also have a faithful reading
/// that quantifies over all numbers and therefore gets an extra
/// `NotEvaluable` marker record.
const STEPS: [u8; 7] = [7, 8, 9, 10, 11, 12, 13];
const UNBOUNDED_STEPS: [u8; 3] = [7, 8, 12];

struct ChainState {
    /// Step values indexed 7..=13.
    value: [bool; 14],
    /// Universe members that prove the diagonal sentence.
    provers: Vec<GoedelNumber>,
    /// Least in-budget refutation, if any.
    refutation: Option<GoedelNumber>,
    m: GoedelNumber,
    universe_size: usize,
}

impl ChainState {
    fn step_value(&self, step: u8) -> bool {
        self.value[step as usize]
    }

    fn step_note(&self, step: u8) -> String {
        let u = self.universe_size;
        match step {
            7 => format!(
                "membership in the unprovability set, read as: no member of the {u}-element \
                 test universe proves the diagonal sentence"
            ),
            8 => format!(
                "no existential witness, read as: no member of the {u}-element test universe \
                 proves the diagonal sentence"
            ),
            9 => format!(
                "for every y in the {u}-element test universe, y does not prove the diagonal \
                 sentence ({} members do)",
                self.provers.len()
            ),
            10 => format!(
                "particularization at the designated m={}: m does not prove the diagonal sentence",
                self.m
            ),
            11 => format!("the designated m={} refutes the diagonal sentence", self.m),
            12 => "a refutation of the diagonal sentence exists within budget".to_string(),
            13 => "the negation of the diagonal sentence has a bounded proof".to_string(),
            _ => unreachable!("steps run 7..=13"),
        }
    }

    fn unbounded_note(&self, step: u8) -> String {
        match step {
            7 => format!(
                "the faithful reading quantifies over all numbers; surrogate used: the \
                 {}-element test universe",
                self.universe_size
            ),
            8 => format!(
                "the faithful existential ranges over all numbers; surrogate used: the \
                 {}-element test universe",
                self.universe_size
            ),
            12 => "the faithful refutation-existence claim ranges over all numbers; surrogate \
                   used: refutations found within the search budget"
                .to_string(),
            _ => unreachable!("only steps 7, 8, 12 carry unbounded markers"),
        }
    }

    /// Evidence supporting the step's current value, used to assemble
    /// witnesses for directional records. Empty when the value rests on an
    /// absence that has no number to point at.
    fn evidence(&self, step: u8) -> Vec<GoedelNumber> {
        let value = self.step_value(step);
        match (step, value) {
            (7..=9, false) => self.provers.iter().take(3).cloned().collect(),
            (10, false) | (11, true) | (11, false) => vec![self.m.clone()],
            (12 | 13, true) => self.refutation.iter().cloned().collect(),
            _ => Vec::new(),
        }
    }
}

/// Audits the chain for rank `n` with designated number `m`, search budget
/// `budget`, and `universe_cap` raw numbers joined into the test universe.
///
/// Emits one record per step (its bounded statement's truth at the
/// instance), one record per implication direction of each adjacent pair,
/// and `NotEvaluable` markers for the steps whose faithful readings are
/// unbounded. The test universe is every in-budget proof of the diagonal
/// sentence, every in-budget proof of its negation, and the raw numbers
/// below `universe_cap`, so a provable diagonal sentence falsifies the
/// universal step against its own proofs.
pub fn audit_chain(
    calc: &Calculus,
    n: usize,
    m: &GoedelNumber,
    budget: SearchBudget,
    universe_cap: usize,
) -> Vec<AuditRecord> {
    let instance = format!("n={n} m={m} budget={budget} cap={universe_cap}");
    let Some(diagonal) = diag_formula(n) else {
        return vec![AuditRecord::new(
            "chain:out-of-range",
            &instance,
            Truth::NotEvaluable,
            "the rank exceeds the certified enumeration".to_string(),
        )];
    };
    let dcode = formula_code(&diagonal);

    let diagonal_proofs = calc.in_budget_proofs(&diagonal, budget);
    let negation_proofs = calc.in_budget_proofs(&diagonal.negate(), budget);
    let mut universe: Vec<GoedelNumber> = diagonal_proofs
        .iter()
        .chain(negation_proofs.iter())
        .map(|p| p.code())
        .chain((0..universe_cap as u64).map(GoedelNumber::from))
        .collect();
    universe.sort();
    universe.dedup();

    let provers: Vec<GoedelNumber> = universe
        .iter()
        .filter(|x| calc.proves(x, &dcode))
        .cloned()
        .collect();
    let refuters: Vec<GoedelNumber> = universe
        .iter()
        .filter(|x| calc.refutes(x, &dcode))
        .cloned()
        .collect();

    let mut value = [false; 14];
    value[9] = provers.is_empty();
    value[7] = value[9];
    value[8] = value[9];
    value[10] = !calc.proves(m, &dcode);
    value[11] = calc.refutes(m, &dcode);
    value[12] = !refuters.is_empty();
    value[13] = value[12];
    let state = ChainState {
        value,
        provers,
        refutation: refuters.first().cloned(),
        m: m.clone(),
        universe_size: universe.len(),
    };

    let mut records = Vec::with_capacity(22);
    for step in STEPS {
        let truth = if state.step_value(step) {
            Truth::Holds
        } else {
            Truth::Fails
        };
        records.push(
            AuditRecord::new(
                &format!("chain:{step}"),
                &instance,
                truth,
                state.step_note(step),
            )
            .with_witnesses(state.evidence(step)),
        );
    }
    for step in UNBOUNDED_STEPS {
        records.push(AuditRecord::new(
            &format!("chain:{step}:unbounded"),
            &instance,
            Truth::NotEvaluable,
            state.unbounded_note(step),
        ));
    }
    for pair in STEPS.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        records.push(direction(&state, &instance, a, b));
        records.push(direction(&state, &instance, b, a));
    }
    records
}

fn direction(state: &ChainState, instance: &str, from: u8, to: u8) -> AuditRecord {
    let antecedent = state.step_value(from);
    let consequent = state.step_value(to);
    let claim = format!("chain:{from}->{to}");
    if !antecedent {
        AuditRecord::new(
            &claim,
            instance,
            Truth::Holds,
            format!("holds vacuously: step {from} is false at this instance"),
        )
    } else if consequent {
        AuditRecord::new(
            &claim,
            instance,
            Truth::Holds,
            format!("steps {from} and {to} are both true at this instance"),
        )
        .with_witnesses(state.evidence(to))
    } else {
        let mut witnesses = state.evidence(from);
        witnesses.extend(state.evidence(to));
        witnesses.sort();
        witnesses.dedup();
        AuditRecord::new(
            &claim,
            instance,
            Truth::Fails,
            format!("step {from} is true but step {to} is false at this instance"),
        )
        .with_witnesses(witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::new(4, 12, 4).unwrap()
    }

    fn by_claim<'a>(records: &'a [AuditRecord], claim: &str) -> &'a AuditRecord {
        records
            .iter()
            .find(|r| r.claim == claim)
            .unwrap_or_else(|| panic!("no record for {claim}"))
    }

    #[test]
    fn refutable_rank_walks_the_chain_cleanly() {
        let calc = Calculus::standard();
        let zero = GoedelNumber::from(0u64);
        // Rank 1 diagonalizes to a refutable sentence; with m = 0 the
        // particularization step is true but the refutation step at m fails.
        let records = audit_chain(&calc, 1, &zero, budget(), 50);
        assert_eq!(records.len(), 22);
        assert_eq!(by_claim(&records, "chain:9").truth, Truth::Holds);
        assert_eq!(by_claim(&records, "chain:10").truth, Truth::Holds);
        assert_eq!(by_claim(&records, "chain:9->10").truth, Truth::Holds);
        assert_eq!(by_claim(&records, "chain:10->9").truth, Truth::Holds);
        // m = 0 refutes nothing, so the link from particularization to the
        // refutation predicate fails, with m attached as the witness.
        let to_refuting = by_claim(&records, "chain:10->11");
        assert_eq!(to_refuting.truth, Truth::Fails);
        assert_eq!(to_refuting.witnesses, vec![zero.clone()]);
        // The refutation exists in budget, so the tail of the chain holds
        // with a shared witness.
        let wid = by_claim(&records, "chain:11->12");
        assert_eq!(wid.truth, Truth::Holds);
        assert!(wid.note.contains("vacuously"));
        let last = by_claim(&records, "chain:12->13");
        assert_eq!(last.truth, Truth::Holds);
        assert_eq!(last.witnesses.len(), 1);
        assert_eq!(by_claim(&records, "chain:12").witnesses, last.witnesses);
        assert_eq!(by_claim(&records, "chain:13").witnesses, last.witnesses);
    }

    #[test]
    fn provable_rank_fails_the_particularization_reversal() {
        let calc = Calculus::standard();
        let zero = GoedelNumber::from(0u64);
        // Rank 30 diagonalizes to a provable reflexivity instance: its own
        // proofs sit in the test universe, so the universal step fails while
        // the step at m = 0 holds.
        let records = audit_chain(&calc, 30, &zero, budget(), 50);
        assert_eq!(by_claim(&records, "chain:9").truth, Truth::Fails);
        assert!(!by_claim(&records, "chain:9").witnesses.is_empty());
        assert_eq!(by_claim(&records, "chain:10").truth, Truth::Holds);
        assert_eq!(by_claim(&records, "chain:9->10").truth, Truth::Holds);
        let reversal = by_claim(&records, "chain:10->9");
        assert_eq!(reversal.truth, Truth::Fails);
        assert!(!reversal.witnesses.is_empty());
        let prover = &reversal.witnesses[0];
        assert!(calc.proves(prover, &formula_code(&diag_formula(30).unwrap())));
    }

    #[test]
    fn designated_refutation_code_links_the_tail_with_one_witness() {
        let calc = Calculus::standard();
        let refutation = calc
            .bounded_prove(&diag_formula(1).unwrap().negate(), budget())
            .unwrap()
            .code();
        let records = audit_chain(&calc, 1, &refutation, budget(), 50);
        for claim in [
            "chain:10",
            "chain:11",
            "chain:10->11",
            "chain:11->12",
            "chain:12->13",
        ] {
            assert_eq!(by_claim(&records, claim).truth, Truth::Holds, "{claim}");
        }
        // The refuting m carries the tail: 11 holds at m, and 12 and 13
        // hold with the least in-budget refutation, which is m itself.
        assert_eq!(
            by_claim(&records, "chain:11->12").witnesses,
            vec![refutation.clone()]
        );
        assert_eq!(
            by_claim(&records, "chain:12->13").witnesses,
            vec![refutation]
        );
    }

    #[test]
    fn unbounded_steps_carry_markers() {
        let calc = Calculus::standard();
        let records = audit_chain(&calc, 1, &GoedelNumber::from(0u64), budget(), 10);
        for step in [7u8, 8, 12] {
            let marker = by_claim(&records, &format!("chain:{step}:unbounded"));
            assert_eq!(marker.truth, Truth::NotEvaluable);
            assert!(marker.note.contains("surrogate"));
        }
        assert!(!records.iter().any(|r| r.claim == "chain:9:unbounded"));
    }

    #[test]
    fn out_of_range_rank_is_not_evaluable() {
        let calc = Calculus::standard();
        let records = audit_chain(&calc, 0, &GoedelNumber::from(0u64), budget(), 10);
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].truth, Truth::NotEvaluable);
    }
}
