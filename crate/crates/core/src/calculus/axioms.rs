//! Axiom base of the calculus: three propositional schemas, two quantifier
//! schemas, equality schemas (variable reflexivity plus substitution for
//! `S`, `+`, `*` and `=`), and seven closed arithmetic axioms.
//!
//! Schemas are recognized by pattern matching, so the axiom set stays
//! decidable while the arithmetic part stays a finite list. Note that
//! reflexivity covers variables only: `0=0` is not an axiom, it is derived
//! from `x0=x0` by generalization, instantiation and modus ponens.

use std::fmt;
use std::sync::OnceLock;

use crate::lang::{parse_formula, Formula, Term, VarIndex};

/// The closed arithmetic axioms, in their canonical surface spelling.
pub const ARITHMETIC_AXIOMS: [&str; 7] = [
    "all x0 ~(S(x0)=0)",
    "all x0 (all x1 ((S(x0)=S(x1)) -> (x0=x1)))",
    "all x0 ((x0+0)=x0)",
    "all x0 (all x1 ((x0+S(x1))=S((x0+x1))))",
    "all x0 ((x0*0)=0)",
    "all x0 (all x1 ((x0*S(x1))=((x0*x1)+x0)))",
    "all x0 (~(x0=0) -> exists x1 (x0=S(x1)))",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// φ → (ψ → φ)
    L1,
    /// (φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))
    L2,
    /// (¬ψ → ¬φ) → (φ → ψ)
    L3,
    /// ∀v φ → φ[v:=t], for a closed term t
    Q1,
    /// ∀v(φ → ψ) → (φ → ∀v ψ), v not free in φ
    Q2,
    /// xᵢ = xᵢ
    EqRefl,
    /// r = s → S(r) = S(s)
    SubstS,
    /// r = s → (r+t) = (s+t), and the right-argument twin
    SubstPlus,
    /// r = s → (r*t) = (s*t), and the right-argument twin
    SubstStar,
    /// r = s → (r = t → s = t), and the right-argument twin
    SubstEq,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    /// Extra axiom injected into a [`super::Calculus`] fixture, by position.
    Extra(u16),
}

impl AxiomId {
    pub fn name(&self) -> String {
        match self {
            AxiomId::L1 => "l1".into(),
            AxiomId::L2 => "l2".into(),
            AxiomId::L3 => "l3".into(),
            AxiomId::Q1 => "q1".into(),
            AxiomId::Q2 => "q2".into(),
            AxiomId::EqRefl => "refl".into(),
            AxiomId::SubstS => "subst-s".into(),
            AxiomId::SubstPlus => "subst-plus".into(),
            AxiomId::SubstStar => "subst-star".into(),
            AxiomId::SubstEq => "subst-eq".into(),
            AxiomId::A1 => "a1".into(),
            AxiomId::A2 => "a2".into(),
            AxiomId::A3 => "a3".into(),
            AxiomId::A4 => "a4".into(),
            AxiomId::A5 => "a5".into(),
            AxiomId::A6 => "a6".into(),
            AxiomId::A7 => "a7".into(),
            AxiomId::Extra(k) => format!("extra{k}"),
        }
    }

    pub fn from_name(s: &str) -> Option<AxiomId> {
        Some(match s {
            "l1" => AxiomId::L1,
            "l2" => AxiomId::L2,
            "l3" => AxiomId::L3,
            "q1" => AxiomId::Q1,
            "q2" => AxiomId::Q2,
            "refl" => AxiomId::EqRefl,
            "subst-s" => AxiomId::SubstS,
            "subst-plus" => AxiomId::SubstPlus,
            "subst-star" => AxiomId::SubstStar,
            "subst-eq" => AxiomId::SubstEq,
            "a1" => AxiomId::A1,
            "a2" => AxiomId::A2,
            "a3" => AxiomId::A3,
            "a4" => AxiomId::A4,
            "a5" => AxiomId::A5,
            "a6" => AxiomId::A6,
            "a7" => AxiomId::A7,
            _ => {
                let k = s.strip_prefix("extra")?.parse().ok()?;
                AxiomId::Extra(k)
            }
        })
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The parsed arithmetic axioms, in order A1..A7.
pub fn arithmetic_axioms() -> &'static [Formula; 7] {
    static PARSED: OnceLock<[Formula; 7]> = OnceLock::new();
    PARSED.get_or_init(|| {
        let v: Vec<Formula> = ARITHMETIC_AXIOMS
            .iter()
            .map(|s| parse_formula(s).expect("axiom strings are well-formed"))
            .collect();
        v.try_into().unwrap()
    })
}

/// Builds the implication `p -> q` in its primitive `(~(p) | q)` shape.
pub fn implication(premise: Formula, conclusion: Formula) -> Formula {
    Formula::Or(
        Box::new(Formula::Not(Box::new(premise))),
        Box::new(conclusion),
    )
}

/// Reads `(~(p) | q)` as the implication `p -> q`.
pub fn as_implication(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::Or(l, r) = f {
        if let Formula::Not(p) = &**l {
            return Some((p, r));
        }
    }
    None
}

fn is_l1(f: &Formula) -> bool {
    // φ → (ψ → φ)
    as_implication(f)
        .and_then(|(phi, rest)| as_implication(rest).map(|(_, phi2)| phi == phi2))
        .unwrap_or(false)
}

fn is_l2(f: &Formula) -> bool {
    // (φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))
    (|| {
        let (a, b) = as_implication(f)?;
        let (f1, rest) = as_implication(a)?;
        let (g1, h1) = as_implication(rest)?;
        let (ab, ac) = as_implication(b)?;
        let (f2, g2) = as_implication(ab)?;
        let (f3, h2) = as_implication(ac)?;
        Some(f1 == f2 && f2 == f3 && g1 == g2 && h1 == h2)
    })()
    .unwrap_or(false)
}

fn is_l3(f: &Formula) -> bool {
    // (¬ψ → ¬φ) → (φ → ψ)
    (|| {
        let (a, b) = as_implication(f)?;
        let (x, y) = as_implication(a)?;
        let (phi, psi) = as_implication(b)?;
        let (Formula::Not(psi1), Formula::Not(phi1)) = (x, y) else {
            return Some(false);
        };
        Some(&**psi1 == psi && &**phi1 == phi)
    })()
    .unwrap_or(false)
}

/// Does `instance` equal `pattern` with every free occurrence of `x_v`
/// replaced by one common closed term?
fn matches_substitution(pattern: &Formula, instance: &Formula, v: VarIndex) -> bool {
    fn walk_f(
        p: &Formula,
        i: &Formula,
        v: VarIndex,
        active: bool,
        subst: &mut Option<Term>,
    ) -> bool {
        match (p, i) {
            (Formula::Eq(a, b), Formula::Eq(c, d)) => {
                walk_t(a, c, v, active, subst) && walk_t(b, d, v, active, subst)
            }
            (Formula::Not(x), Formula::Not(y)) => walk_f(x, y, v, active, subst),
            (Formula::Or(x1, x2), Formula::Or(y1, y2)) => {
                walk_f(x1, y1, v, active, subst) && walk_f(x2, y2, v, active, subst)
            }
            (Formula::Forall(w1, x), Formula::Forall(w2, y)) => {
                w1 == w2 && walk_f(x, y, v, active && *w1 != v, subst)
            }
            _ => false,
        }
    }
    fn walk_t(p: &Term, i: &Term, v: VarIndex, active: bool, subst: &mut Option<Term>) -> bool {
        match p {
            Term::Var(w) if *w == v && active => match subst {
                Some(t) => t == i,
                None => {
                    if i.is_closed() {
                        *subst = Some(i.clone());
                        true
                    } else {
                        false
                    }
                }
            },
            Term::Var(w) => matches!(i, Term::Var(u) if u == w),
            Term::Zero => matches!(i, Term::Zero),
            Term::Succ(a) => matches!(i, Term::Succ(b) if walk_t(a, b, v, active, subst)),
            Term::Add(a1, a2) => {
                matches!(i, Term::Add(b1, b2)
                    if walk_t(a1, b1, v, active, subst) && walk_t(a2, b2, v, active, subst))
            }
            Term::Mul(a1, a2) => {
                matches!(i, Term::Mul(b1, b2)
                    if walk_t(a1, b1, v, active, subst) && walk_t(a2, b2, v, active, subst))
            }
        }
    }
    let mut subst = None;
    walk_f(pattern, instance, v, true, &mut subst)
}

fn is_q1(f: &Formula) -> bool {
    // ∀v φ → φ[v:=t] with t closed; a vacuous v is allowed (any t works).
    (|| {
        let (a, rhs) = as_implication(f)?;
        let Formula::Forall(v, body) = a else {
            return Some(false);
        };
        Some(matches_substitution(body, rhs, *v))
    })()
    .unwrap_or(false)
}

fn is_q2(f: &Formula) -> bool {
    // ∀v(φ → ψ) → (φ → ∀v ψ), v not free in φ
    (|| {
        let (a, b) = as_implication(f)?;
        let Formula::Forall(v, inner) = a else {
            return Some(false);
        };
        let (phi1, psi1) = as_implication(inner)?;
        let (phi2, rest) = as_implication(b)?;
        let Formula::Forall(v2, psi2) = rest else {
            return Some(false);
        };
        Some(v2 == v && phi1 == phi2 && psi1 == &**psi2 && !phi1.free_vars().contains(v))
    })()
    .unwrap_or(false)
}

fn is_eq_refl(f: &Formula) -> bool {
    matches!(f, Formula::Eq(Term::Var(i), Term::Var(j)) if i == j)
}

fn is_subst_s(f: &Formula) -> bool {
    // r = s → S(r) = S(s)
    (|| {
        let (a, b) = as_implication(f)?;
        let (Formula::Eq(r, s), Formula::Eq(Term::Succ(r2), Term::Succ(s2))) = (a, b) else {
            return Some(false);
        };
        Some(r == &**r2 && s == &**s2)
    })()
    .unwrap_or(false)
}

fn is_subst_binop(f: &Formula, plus: bool) -> bool {
    // r = s → (r∘t) = (s∘t), or r = s → (t∘r) = (t∘s)
    (|| {
        let (a, b) = as_implication(f)?;
        let Formula::Eq(r, s) = a else {
            return Some(false);
        };
        let (l, rgt) = match (b, plus) {
            (Formula::Eq(Term::Add(l1, l2), Term::Add(r1, r2)), true) => ((l1, l2), (r1, r2)),
            (Formula::Eq(Term::Mul(l1, l2), Term::Mul(r1, r2)), false) => ((l1, l2), (r1, r2)),
            _ => return Some(false),
        };
        let left_arg = &**l.0 == r && &**rgt.0 == s && l.1 == rgt.1;
        let right_arg = &**l.1 == r && &**rgt.1 == s && l.0 == rgt.0;
        Some(left_arg || right_arg)
    })()
    .unwrap_or(false)
}

fn is_subst_eq(f: &Formula) -> bool {
    // r = s → (r = t → s = t), or r = s → (t = r → t = s)
    (|| {
        let (a, b) = as_implication(f)?;
        let Formula::Eq(r, s) = a else {
            return Some(false);
        };
        let (c, d) = as_implication(b)?;
        let (Formula::Eq(c1, c2), Formula::Eq(d1, d2)) = (c, d) else {
            return Some(false);
        };
        let left_side = c1 == r && d1 == s && c2 == d2;
        let right_side = c2 == r && d2 == s && c1 == d1;
        Some(left_side || right_side)
    })()
    .unwrap_or(false)
}

/// Is `f` an instance of the given schema (or equal to the given axiom)?
/// `Extra` ids are resolved by the calculus, not here.
pub(super) fn is_instance(f: &Formula, id: AxiomId) -> bool {
    match id {
        AxiomId::L1 => is_l1(f),
        AxiomId::L2 => is_l2(f),
        AxiomId::L3 => is_l3(f),
        AxiomId::Q1 => is_q1(f),
        AxiomId::Q2 => is_q2(f),
        AxiomId::EqRefl => is_eq_refl(f),
        AxiomId::SubstS => is_subst_s(f),
        AxiomId::SubstPlus => is_subst_binop(f, true),
        AxiomId::SubstStar => is_subst_binop(f, false),
        AxiomId::SubstEq => is_subst_eq(f),
        AxiomId::A1 => f == &arithmetic_axioms()[0],
        AxiomId::A2 => f == &arithmetic_axioms()[1],
        AxiomId::A3 => f == &arithmetic_axioms()[2],
        AxiomId::A4 => f == &arithmetic_axioms()[3],
        AxiomId::A5 => f == &arithmetic_axioms()[4],
        AxiomId::A6 => f == &arithmetic_axioms()[5],
        AxiomId::A7 => f == &arithmetic_axioms()[6],
        AxiomId::Extra(_) => false,
    }
}

/// Recognizes schema instances, in a fixed order so the returned id is
/// deterministic when several schemas match.
pub fn schema_id(f: &Formula) -> Option<AxiomId> {
    for (id, ax) in arithmetic_axioms().iter().enumerate() {
        if f == ax {
            return Some(
                [
                    AxiomId::A1,
                    AxiomId::A2,
                    AxiomId::A3,
                    AxiomId::A4,
                    AxiomId::A5,
                    AxiomId::A6,
                    AxiomId::A7,
                ][id],
            );
        }
    }
    if is_eq_refl(f) {
        return Some(AxiomId::EqRefl);
    }
    if is_l1(f) {
        return Some(AxiomId::L1);
    }
    if is_l2(f) {
        return Some(AxiomId::L2);
    }
    if is_l3(f) {
        return Some(AxiomId::L3);
    }
    if is_q1(f) {
        return Some(AxiomId::Q1);
    }
    if is_q2(f) {
        return Some(AxiomId::Q2);
    }
    if is_subst_s(f) {
        return Some(AxiomId::SubstS);
    }
    if is_subst_binop(f, true) {
        return Some(AxiomId::SubstPlus);
    }
    if is_subst_binop(f, false) {
        return Some(AxiomId::SubstStar);
    }
    if is_subst_eq(f) {
        return Some(AxiomId::SubstEq);
    }
    None
}
