//! Bounded proof search.
//!
//! The strategy is goal-directed: build a finite candidate pool of lines
//! (the goal, axioms, reflexivity instances and their generalizations, and
//! instantiation instances and implications over a small closed-term pool),
//! link candidates by the two rules, then enumerate dependency sets of at
//! most `max_lines` lines by backward search from the goal. Every ordering
//! of every set is replayed through the proof checker, so anything returned
//! is a checked proof; among all of them the one with the least code wins.
//!
//! The search is deterministic: the candidate pool is sorted, the backward
//! walk follows that order, and results are compared by exact code order.
//! Completeness is only relative to the candidate pool (instances of the
//! propositional and substitution schemas are recognized when replaying but
//! never generated), and the backward walk visits at most [`NODE_CAP`]
//! states, so a verdict of unknown means "no proof in this restricted
//! space", nothing stronger.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{implication, Calculus, ProofObject, SearchBudget, Verdict};
use crate::codec::GoedelNumber;
use crate::lang::{Formula, Term};

/// Upper bound on backward-search states per goal, a safety valve against
/// runaway budgets. Deterministic: the walk order is fixed, so the same
/// inputs always explore the same states.
pub const NODE_CAP: usize = 1 << 22;

impl Calculus {
    /// Searches for a proof of `target`, then for a proof of its negation,
    /// within the budget. The first hit wins; each witness is the least
    /// proof code among the proofs found on its side.
    pub fn decide_bounded(&self, target: &Formula, budget: SearchBudget) -> Verdict {
        if let Some(p) = self.bounded_prove(target, budget) {
            return Verdict::Provable(p.code());
        }
        if let Some(p) = self.bounded_prove(&target.negate(), budget) {
            return Verdict::Refutable(p.code());
        }
        Verdict::Unknown(budget)
    }

    /// Least-code proof of `target` within the budget, if the search space
    /// contains one.
    pub fn bounded_prove(&self, target: &Formula, budget: SearchBudget) -> Option<ProofObject> {
        self.search(target, budget, true).into_iter().next()
    }

    /// Every proof of `target` the bounded search can assemble, sorted by
    /// code, least first. Duplicates are removed; distinct orderings of the
    /// same lines count as distinct proofs.
    pub fn in_budget_proofs(&self, target: &Formula, budget: SearchBudget) -> Vec<ProofObject> {
        self.search(target, budget, false)
    }

    fn search(&self, target: &Formula, budget: SearchBudget, first_only: bool) -> Vec<ProofObject> {
        if target.size() > budget.max_formula_size() {
            return Vec::new();
        }
        let pool = term_pool(target, budget.pool_cap());
        let cand = self.candidate_lines(target, &budget, &pool);
        let goal = cand
            .binary_search(target)
            .expect("the goal is always a candidate");
        let supports = link_candidates(self, &cand);
        let sets = collect_dependency_sets(goal, &supports, budget.max_lines());

        let mut proofs: Vec<(GoedelNumber, ProofObject)> = sets
            .par_iter()
            .flat_map_iter(|set| {
                let rest: Vec<usize> = set.iter().copied().filter(|&i| i != goal).collect();
                let mut found = Vec::new();
                permute(&rest, &mut Vec::new(), &mut |order| {
                    let lines: Vec<Formula> = order
                        .iter()
                        .chain(std::iter::once(&goal))
                        .map(|&i| cand[i].clone())
                        .collect();
                    if self.is_proof_sequence(&lines) {
                        let proof = ProofObject::infer(self, lines)
                            .expect("replayed sequences infer cleanly");
                        found.push((proof.code(), proof));
                    }
                });
                found
            })
            .collect();
        proofs.sort_by(|a, b| a.0.cmp(&b.0));
        proofs.dedup_by(|a, b| a.0 == b.0);
        if first_only {
            proofs.truncate(1);
        }
        proofs.into_iter().map(|(_, p)| p).collect()
    }

    /// The candidate lines a proof of `target` may use, sorted and deduped.
    fn candidate_lines(
        &self,
        target: &Formula,
        budget: &SearchBudget,
        pool: &[Term],
    ) -> Vec<Formula> {
        let max_size = budget.max_formula_size();
        let mut set: BTreeSet<Formula> = BTreeSet::new();
        set.insert(target.clone());

        // Bodies under the goal's leading quantifiers, so generalization can
        // rebuild it.
        let mut stripped = target;
        while let Formula::Forall(_, body) = stripped {
            stripped = body;
            set.insert(stripped.clone());
        }

        for ax in super::arithmetic_axioms() {
            set.insert(ax.clone());
        }
        for ax in self.extra_axioms() {
            if ax.size() <= max_size {
                set.insert(ax.clone());
            }
        }

        // Reflexivity at the goal's variables (and x0 for closed goals),
        // with their generalizations as instantiation fuel.
        let mut vars = target.free_vars();
        vars.insert(0);
        for v in vars {
            let refl = Formula::Eq(Term::Var(v), Term::Var(v));
            set.insert(Formula::Forall(v, Box::new(refl.clone())));
            set.insert(refl);
        }

        // Instantiation closure: each universal candidate contributes its
        // instances over the pool and the corresponding implications. Three
        // rounds reach through doubly quantified axioms.
        for _ in 0..3 {
            let mut fresh = Vec::new();
            for f in &set {
                let Formula::Forall(v, body) = f else {
                    continue;
                };
                for t in pool {
                    let inst = body.subst_term(*v, t);
                    let imp = implication(f.clone(), inst.clone());
                    if imp.size() <= max_size && !set.contains(&imp) {
                        fresh.push(imp);
                    }
                    if inst.size() <= max_size && !set.contains(&inst) {
                        fresh.push(inst);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }

        set.retain(|f| f.size() <= max_size || f == target);
        set.into_iter().collect()
    }
}

/// Closed terms a proof may instantiate with: the goal's own closed
/// subterms, largest first, padded with canonical small terms up to `cap`.
fn term_pool(target: &Formula, cap: usize) -> Vec<Term> {
    let mut seen = BTreeSet::new();
    let mut pool = Vec::new();
    let mut sub: Vec<Term> = target.closed_subterms().into_iter().collect();
    sub.sort_by(|a, b| {
        token_len(b)
            .cmp(&token_len(a))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    for t in sub {
        if pool.len() == cap {
            return pool;
        }
        if seen.insert(t.clone()) {
            pool.push(t);
        }
    }
    for t in canonical_closed_terms(cap) {
        if pool.len() == cap {
            break;
        }
        if seen.insert(t.clone()) {
            pool.push(t);
        }
    }
    pool
}

fn token_len(t: &Term) -> usize {
    match t {
        Term::Zero | Term::Var(_) => 1,
        Term::Succ(a) => 3 + token_len(a),
        Term::Add(a, b) | Term::Mul(a, b) => 3 + token_len(a) + token_len(b),
    }
}

/// The first closed terms in (token length, spelling) order:
/// `0`, `S(0)`, `(0*0)`, `(0+0)`, `S(S(0))`, …
pub(super) fn canonical_closed_terms(count: usize) -> Vec<Term> {
    let mut by_len: Vec<Vec<Term>> = vec![Vec::new(), vec![Term::Zero]];
    let mut out = vec![Term::Zero];
    while out.len() < count {
        let l = by_len.len();
        let mut level: Vec<Term> = Vec::new();
        if l >= 4 {
            for t in &by_len[l - 3] {
                level.push(Term::Succ(Box::new(t.clone())));
            }
        }
        if l >= 5 {
            for k in 1..=(l - 4) {
                for a in &by_len[k] {
                    for b in &by_len[l - 3 - k] {
                        level.push(Term::Mul(Box::new(a.clone()), Box::new(b.clone())));
                        level.push(Term::Add(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
        }
        level.sort_by_key(|t| t.to_string());
        out.extend(level.iter().cloned());
        by_len.push(level);
    }
    out.truncate(count);
    out
}

#[derive(Clone, Copy)]
enum Support {
    Axiom,
    Gen(usize),
    Mp { premise: usize, implication: usize },
}

/// For each candidate, the ways it can enter a proof.
fn link_candidates(calc: &Calculus, cand: &[Formula]) -> Vec<Vec<Support>> {
    let index: BTreeMap<&Formula, usize> = cand.iter().zip(0..).collect();
    let mut supports: Vec<Vec<Support>> = cand
        .iter()
        .map(|f| {
            let mut s = Vec::new();
            if calc.is_axiom(f).is_some() {
                s.push(Support::Axiom);
            }
            if let Formula::Forall(_, body) = f {
                if let Some(&b) = index.get(body.as_ref()) {
                    s.push(Support::Gen(b));
                }
            }
            s
        })
        .collect();
    for (j, f) in cand.iter().enumerate() {
        if let Some((a, c)) = super::as_implication(f) {
            if let (Some(&ai), Some(&ci)) = (index.get(a), index.get(c)) {
                supports[ci].push(Support::Mp {
                    premise: ai,
                    implication: j,
                });
            }
        }
    }
    supports
}

/// Backward walk from the goal: resolve each pending line by one of its
/// supports, pulling the support's inputs into the set. Cycle-tainted sets
/// can slip through; replaying orders through the checker filters them.
fn collect_dependency_sets(
    goal: usize,
    supports: &[Vec<Support>],
    max_lines: usize,
) -> Vec<Vec<usize>> {
    fn walk(
        supports: &[Vec<Support>],
        max_lines: usize,
        pending: &mut Vec<usize>,
        chosen: &mut BTreeSet<usize>,
        found: &mut BTreeSet<Vec<usize>>,
        fuel: &mut usize,
    ) {
        if *fuel == 0 {
            return;
        }
        *fuel -= 1;
        let Some(u) = pending.pop() else {
            found.insert(chosen.iter().copied().collect());
            return;
        };
        for s in &supports[u] {
            let mut deps = [0usize; 2];
            let deps: &[usize] = match s {
                Support::Axiom => &[],
                Support::Gen(b) => {
                    deps[0] = *b;
                    &deps[..1]
                }
                Support::Mp {
                    premise,
                    implication,
                } => {
                    deps[0] = *premise;
                    deps[1] = *implication;
                    &deps[..2]
                }
            };
            let new: Vec<usize> = deps
                .iter()
                .copied()
                .filter(|d| !chosen.contains(d))
                .collect();
            if chosen.len() + new.len() > max_lines {
                continue;
            }
            for &d in &new {
                chosen.insert(d);
                pending.push(d);
            }
            walk(supports, max_lines, pending, chosen, found, fuel);
            for &d in &new {
                chosen.remove(&d);
                pending.pop();
            }
        }
        pending.push(u);
    }

    let mut found = BTreeSet::new();
    let mut fuel = NODE_CAP;
    walk(
        supports,
        max_lines,
        &mut vec![goal],
        &mut BTreeSet::from([goal]),
        &mut found,
        &mut fuel,
    );
    found.into_iter().collect()
}

/// Calls `visit` with every ordering of `items`.
fn permute(items: &[usize], prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if prefix.len() == items.len() {
        visit(prefix);
        return;
    }
    for &x in items {
        if prefix.contains(&x) {
            continue;
        }
        prefix.push(x);
        permute(items, prefix, visit);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{formula_code, proof_code};
    use crate::lang::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn budget() -> SearchBudget {
        SearchBudget::new(4, 12, 4).unwrap()
    }

    #[test]
    fn canonical_terms_start_as_expected() {
        let names: Vec<String> = canonical_closed_terms(5)
            .iter()
            .map(Term::to_string)
            .collect();
        assert_eq!(names, ["0", "S(0)", "(0*0)", "(0+0)", "S(S(0))"]);
    }

    #[test]
    fn pool_prefers_goal_subterms() {
        let pool = term_pool(&f("S(0)=0"), 4);
        let names: Vec<String> = pool.iter().map(Term::to_string).collect();
        assert_eq!(names, ["S(0)", "0", "(0*0)", "(0+0)"]);
    }

    #[test]
    fn refutes_successor_of_zero_equals_zero() {
        let calc = Calculus::standard();
        let verdict = calc.decide_bounded(&f("S(0)=0"), budget());
        let Verdict::Refutable(w) = &verdict else {
            panic!("expected refutable, got {verdict}");
        };
        assert!(calc.refutes(w, &formula_code(&f("S(0)=0"))));
        // Least code puts the largest-coded line on the smallest prime, so
        // the instantiation implication comes first.
        let expected = proof_code(&[
            f("(all x0 ~(S(x0)=0) -> ~(S(0)=0))"),
            f("all x0 ~(S(x0)=0)"),
            f("~(S(0)=0)"),
        ])
        .unwrap();
        assert_eq!(w, &expected);
        let swapped = proof_code(&[
            f("all x0 ~(S(x0)=0)"),
            f("(all x0 ~(S(x0)=0) -> ~(S(0)=0))"),
            f("~(S(0)=0)"),
        ])
        .unwrap();
        assert!(*w < swapped);
    }

    #[test]
    fn proves_numeral_reflexivity_via_four_lines() {
        let calc = Calculus::standard();
        let p = calc.bounded_prove(&f("0=0"), budget()).unwrap();
        assert_eq!(p.lines().len(), 4);
        assert_eq!(p.last(), &f("0=0"));
        assert!(calc.proves(&p.code(), &formula_code(&f("0=0"))));
    }

    #[test]
    fn axioms_prove_themselves_in_one_line() {
        let calc = Calculus::standard();
        let a1 = f("all x0 ~(S(x0)=0)");
        let p = calc.bounded_prove(&a1, budget()).unwrap();
        assert_eq!(p.lines(), std::slice::from_ref(&a1));
        assert_eq!(p.code(), proof_code(&[a1]).unwrap());
    }

    #[test]
    fn unknown_when_budget_is_too_small() {
        let calc = Calculus::standard();
        let tight = SearchBudget::new(2, 12, 4).unwrap();
        assert_eq!(
            calc.decide_bounded(&f("S(0)=0"), tight),
            Verdict::Unknown(tight)
        );
        let wide = SearchBudget::new(3, 12, 4).unwrap();
        assert!(matches!(
            calc.decide_bounded(&f("S(0)=0"), wide),
            Verdict::Refutable(_)
        ));
    }

    #[test]
    fn oversized_targets_are_unknown_immediately() {
        let calc = Calculus::standard();
        let small = SearchBudget::new(4, 2, 4).unwrap();
        assert_eq!(
            calc.decide_bounded(&f("S(0)=0"), small),
            Verdict::Unknown(small)
        );
    }

    #[test]
    fn provable_wins_over_refutable() {
        // A1 itself is both a one-line proof and (in a fixture with ~A1 as an
        // extra axiom) refutable; the provable side is reported.
        let a1 = f("all x0 ~(S(x0)=0)");
        let fixture = Calculus::with_extra_axioms(vec![a1.clone().negate()]);
        assert!(matches!(
            fixture.decide_bounded(&a1, budget()),
            Verdict::Provable(_)
        ));
    }

    #[test]
    fn enumerates_all_in_budget_proofs_sorted() {
        let calc = Calculus::standard();
        let target = f("~(S(0)=0)");
        let proofs = calc.in_budget_proofs(&target, budget());
        assert!(!proofs.is_empty());
        for p in &proofs {
            assert!(calc.is_proof_sequence(p.lines()));
            assert_eq!(p.last(), &target);
        }
        for w in proofs.windows(2) {
            assert!(w[0].code() < w[1].code());
        }
        // The least proof is the bounded_prove witness.
        assert_eq!(
            proofs[0].code(),
            calc.bounded_prove(&target, budget()).unwrap().code()
        );
    }

    #[test]
    fn search_is_deterministic_across_runs() {
        let calc = Calculus::standard();
        let target = f("S(0)=0");
        let first = calc.decide_bounded(&target, budget());
        for _ in 0..2 {
            assert_eq!(calc.decide_bounded(&target, budget()), first);
        }
    }
}
