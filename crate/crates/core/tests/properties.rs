//! Randomized invariants of the language, the coding, and closed-formula
//! evaluation.

use num_bigint::BigUint;
use proptest::prelude::*;

use arithmos_core::codec::{decode_formula, decode_seq, encode_seq, neg_code};
use arithmos_core::{
    eval_closed, formula_code, parse_formula, EvalOutcome, Formula, GoedelNumber, Term,
};

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        3 => Just(Term::Zero),
        2 => (0u64..4).prop_map(Term::Var),
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::Succ(Box::new(t))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Term::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let atom = (term_strategy(), term_strategy()).prop_map(|(a, b)| Formula::Eq(a, b));
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
            (0u64..4, inner).prop_map(|(v, f)| Formula::Forall(v, Box::new(f))),
        ]
    })
}

/// A closed term: no variable leaves.
fn closed_term_strategy() -> impl Strategy<Value = Term> {
    let leaf = Just(Term::Zero);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::Succ(Box::new(t))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Term::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

/// A closed formula: every variable ends up beneath its own quantifier.
fn closed_formula_strategy() -> impl Strategy<Value = Formula> {
    formula_strategy().prop_map(|f| {
        f.free_vars()
            .into_iter()
            .fold(f, |g, v| Formula::Forall(v, Box::new(g)))
    })
}

/// A quantifier-free closed formula, where evaluation is exact.
fn ground_formula_strategy() -> impl Strategy<Value = Formula> {
    let atom =
        (closed_term_strategy(), closed_term_strategy()).prop_map(|(a, b)| Formula::Eq(a, b));
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(f in formula_strategy()) {
        let printed = f.to_string();
        let back = parse_formula(&printed).expect("canonical prints parse");
        prop_assert_eq!(back, f);
    }

    #[test]
    fn substitution_eliminates_the_variable(
        f in formula_strategy(),
        t in closed_term_strategy(),
    ) {
        for v in f.free_vars() {
            let g = f.subst_term(v, &t);
            prop_assert!(!g.free_vars().contains(&v));
            // No other free variable is disturbed.
            let mut expected = f.free_vars();
            expected.remove(&v);
            prop_assert_eq!(g.free_vars(), expected);
        }
    }

    #[test]
    fn negation_never_collapses(f in formula_strategy()) {
        let n = f.negate();
        prop_assert_eq!(&n, &Formula::Not(Box::new(f.clone())));
        prop_assert_eq!(n.size(), f.size() + 1);
        // The code of the negation is the negation of the code.
        prop_assert_eq!(formula_code(&n), neg_code(&formula_code(&f)).unwrap());
    }

    #[test]
    fn sequence_codes_round_trip(
        exps in proptest::collection::vec(1u64..30, 1..8),
    ) {
        let exps: Vec<BigUint> = exps.into_iter().map(BigUint::from).collect();
        let code = encode_seq(&exps).unwrap();
        prop_assert_eq!(decode_seq(&code).unwrap(), exps.clone());
        // Zero exponents are rejected rather than silently dropped.
        let mut gapped = exps;
        gapped[0] = BigUint::ZERO;
        prop_assert!(encode_seq(&gapped).is_err());
    }

    #[test]
    fn formula_codes_round_trip(f in formula_strategy()) {
        let code = formula_code(&f);
        prop_assert_eq!(decode_formula(&code).unwrap(), f);
    }

    #[test]
    fn distinct_formulas_get_distinct_codes(
        f in formula_strategy(),
        g in formula_strategy(),
    ) {
        prop_assert_eq!(f == g, formula_code(&f) == formula_code(&g));
    }

    #[test]
    fn comparison_agrees_with_materialized_values(
        a in proptest::collection::vec(0u64..12, 1..6),
        b in proptest::collection::vec(0u64..12, 1..6),
    ) {
        let make = |v: &[u64]| {
            GoedelNumber::from_exponents(v.iter().copied().map(BigUint::from).collect())
        };
        let (ga, gb) = (make(&a), make(&b));
        let (va, vb) = (ga.to_biguint().unwrap(), gb.to_biguint().unwrap());
        prop_assert_eq!(ga.cmp(&gb), va.cmp(&vb));
    }

    #[test]
    fn ground_evaluation_is_exact_and_depth_free(f in ground_formula_strategy()) {
        let shallow = eval_closed(&f, 0).unwrap();
        prop_assert_ne!(shallow, EvalOutcome::Unknown);
        prop_assert_eq!(eval_closed(&f, 7).unwrap(), shallow);
    }

    #[test]
    fn decided_evaluations_are_stable_under_deeper_search(
        f in closed_formula_strategy(),
        d1 in 0u64..4,
        extra in 0u64..4,
    ) {
        let first = eval_closed(&f, d1).unwrap();
        if first != EvalOutcome::Unknown {
            prop_assert_eq!(eval_closed(&f, d1 + extra).unwrap(), first);
        }
    }
}
