//! The diagonal enumeration: every formula with exactly one free variable,
//! ordered by code, together with the diagonal instances obtained by
//! substituting a rank's own numeral into the formula at that rank.
//!
//! Scanning codes one by one is hopeless (the first entry sits near 1.5e14),
//! so the enumeration is built the other way around: generate all candidate
//! formulas of token length at most seven, keep those with exactly one free
//! variable, and certify the result against a bound `B` with three parts:
//!
//! * an exact dynamic program gives the least possible code of any formula
//!   with a given token length, positions priced at their primes and
//!   variable slots priced at the cheapest variable exponent, so lengths
//!   eight through forty-seven are barred below `B`;
//! * any formula of length forty-eight or more costs at least the product
//!   of the first forty-eight primes;
//! * within the generated lengths, a variable index beyond the generation
//!   range already costs `B` on its own.
//!
//! Every formula whatsoever therefore either appears in the generated list
//! or has code at least `B`, and the list truncated below `B` is the exact
//! prefix of the enumeration.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::calculus::{Calculus, SearchBudget, Verdict};
use crate::codec::{formula_code, prime, GoedelNumber};
use crate::lang::{Formula, Term, VarIndex};

/// Token lengths the generator covers; everything longer is priced out by
/// the dynamic program window and the primorial tail.
const GENERATED_MAX_LEN: usize = 7;
/// One past the last token position the window prices exactly.
const WINDOW: usize = 48;

/// The certified prefix of the enumeration.
pub struct PhiSequence {
    entries: Vec<(GoedelNumber, Formula)>,
    bound: GoedelNumber,
}

impl PhiSequence {
    /// The shared certified prefix, built once.
    pub fn certified() -> &'static PhiSequence {
        static SEQ: OnceLock<PhiSequence> = OnceLock::new();
        SEQ.get_or_init(PhiSequence::build)
    }

    fn build() -> PhiSequence {
        let bound_value = certified_bound();
        let cap = var_cap(&bound_value);
        let mut entries: Vec<(GoedelNumber, Formula)> = Vec::new();
        for f in generate_candidates(cap) {
            if f.free_vars().len() != 1 {
                continue;
            }
            let code = formula_code(&f);
            let value = code
                .to_biguint()
                .expect("candidate codes stay far below the bound");
            if value < bound_value {
                entries.push((code, f));
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries.dedup_by(|a, b| a.0 == b.0);
        PhiSequence {
            entries,
            bound: GoedelNumber::from(bound_value),
        }
    }

    /// How many ranks are certified.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every formula with a code below this bound is in the sequence.
    pub fn bound(&self) -> &GoedelNumber {
        &self.bound
    }

    /// The formula at 1-based rank `n`.
    pub fn phi(&self, n: usize) -> Option<&Formula> {
        self.entries.get(n.checked_sub(1)?).map(|(_, f)| f)
    }

    /// The code of the formula at rank `n`.
    pub fn code(&self, n: usize) -> Option<&GoedelNumber> {
        self.entries.get(n.checked_sub(1)?).map(|(c, _)| c)
    }

    /// The rank of a formula, if it lies in the certified prefix.
    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        let code = formula_code(f);
        self.entries
            .binary_search_by(|(c, _)| c.cmp(&code))
            .ok()
            .map(|i| i + 1)
    }
}

/// The formula at rank `n` of the enumeration.
pub fn phi(n: usize) -> Option<Formula> {
    PhiSequence::certified().phi(n).cloned()
}

/// The diagonal instance at rank `n`: the rank's formula with its free
/// variable replaced by the numeral for `n`.
pub fn diag_formula(n: usize) -> Option<Formula> {
    let f = PhiSequence::certified().phi(n)?;
    let v = *f
        .free_vars()
        .first()
        .expect("entries have one free variable");
    Some(f.subst_term(v, &Term::numeral(n as u64)))
}

/// The code of the diagonal instance at rank `n`.
pub fn diag(n: usize) -> Option<GoedelNumber> {
    diag_formula(n).map(|f| formula_code(&f))
}

/// Bounded evidence about membership of `n` in the set of ranks whose
/// diagonal instance is unprovable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KEvidence {
    /// A proof of the diagonal instance exists, so `n` is definitely not a
    /// member.
    NotInK { proof: GoedelNumber },
    /// A refutation was found; membership follows if the calculus is
    /// consistent, which bounded search cannot certify.
    InKSuggested { refutation: GoedelNumber },
    /// The budget was exhausted both ways.
    Unknown,
}

/// Examines rank `n` within a search budget.
pub fn k_member_bounded(calc: &Calculus, n: usize, budget: SearchBudget) -> Option<KEvidence> {
    let f = diag_formula(n)?;
    Some(match calc.decide_bounded(&f, budget) {
        Verdict::Provable(proof) => KEvidence::NotInK { proof },
        Verdict::Refutable(refutation) => KEvidence::InKSuggested { refutation },
        Verdict::Unknown(_) => KEvidence::Unknown,
    })
}

fn pw(position: usize, exponent: u32) -> BigUint {
    BigUint::from(prime(position)).pow(exponent)
}

/// Cheapest token cost at a position: `0` codes to 1, the cheapest variable
/// to 21, so a slot that may hold either is priced as `0`.
const ZERO_COST: u32 = 1;
const VAR_COST: u32 = 21;

/// Exact minimum codes of terms and formulas by (start position, token
/// length), pricing variable slots at the cheapest variable. These are
/// lower bounds for actual codes and exact for var-free shapes.
struct MinCode {
    form: Vec<Vec<Option<BigUint>>>,
}

fn min_codes() -> MinCode {
    let mut term = vec![vec![None; WINDOW + 1]; WINDOW];
    let mut form = vec![vec![None; WINDOW + 1]; WINDOW];
    let keep_min = |slot: &mut Option<BigUint>, v: BigUint| {
        if slot.as_ref().is_none_or(|cur| v < *cur) {
            *slot = Some(v);
        }
    };
    for len in 1..=WINDOW {
        for start in 0..=(WINDOW - len) {
            let last = start + len - 1;
            // Terms: a leaf, S(t), or (t∘u).
            if len == 1 {
                term[start][1] = Some(pw(start, ZERO_COST.min(VAR_COST)));
            }
            if len >= 4 {
                if let Some(inner) = term[start + 2][len - 3].clone() {
                    let v = pw(start, 3) * pw(start + 1, 11) * inner * pw(last, 13);
                    keep_min(&mut term[start][len], v);
                }
                for a in 1..=(len - 4) {
                    let b = len - 3 - a;
                    if let (Some(l), Some(r)) =
                        (term[start + 1][a].clone(), term[start + 2 + a][b].clone())
                    {
                        // Plus, not star: of the two operators it has the
                        // smaller symbol code, so it prices the lower bound.
                        let op = pw(start + 1 + a, 17);
                        let v = pw(start, 11) * l * op * r * pw(last, 13);
                        keep_min(&mut term[start][len], v);
                    }
                }
            }
            // Formulas: an equality, ~(f), (f|g), or all x (f).
            for a in 1..len.saturating_sub(1) {
                let b = len - 1 - a;
                if let (Some(l), Some(r)) = (term[start][a].clone(), term[start + a + 1][b].clone())
                {
                    keep_min(&mut form[start][len], l * pw(start + a, 15) * r);
                }
            }
            if len >= 4 {
                if let Some(inner) = form[start + 2][len - 3].clone() {
                    let v = pw(start, 5) * pw(start + 1, 11) * inner * pw(last, 13);
                    keep_min(&mut form[start][len], v);
                }
                for a in 1..=(len - 4) {
                    let b = len - 3 - a;
                    if let (Some(l), Some(r)) =
                        (form[start + 1][a].clone(), form[start + 2 + a][b].clone())
                    {
                        let v = pw(start, 11) * l * pw(start + 1 + a, 7) * r * pw(last, 13);
                        keep_min(&mut form[start][len], v);
                    }
                }
            }
            if len >= 5 {
                if let Some(inner) = form[start + 3][len - 4].clone() {
                    let v = pw(start, 9)
                        * pw(start + 1, VAR_COST)
                        * pw(start + 2, 11)
                        * inner
                        * pw(last, 13);
                    keep_min(&mut form[start][len], v);
                }
            }
        }
    }
    MinCode { form }
}

/// Least possible code of a formula with exactly `len` tokens, if any
/// formula of that length exists.
fn length_floor(codes: &MinCode, len: usize) -> Option<BigUint> {
    codes.form[0][len].clone()
}

/// Codes of all formulas outside the generated lengths are at least this.
fn certified_bound() -> BigUint {
    let codes = min_codes();
    let mut bound: BigUint = (0..WINDOW).map(|i| BigUint::from(prime(i))).product();
    for len in (GENERATED_MAX_LEN + 1)..WINDOW {
        if let Some(floor) = length_floor(&codes, len) {
            bound = bound.min(floor);
        }
    }
    bound
}

/// Largest variable index worth generating: one whose token already costs
/// the bound on the cheapest prime is out regardless of context.
fn var_cap(bound: &BigUint) -> VarIndex {
    let mut i = 0u32;
    while pw(0, VAR_COST + 2 * (i + 1)) < *bound {
        i += 1;
    }
    VarIndex::from(i)
}

/// All candidate formulas of token length at most seven whose variable
/// indices are within `cap`. Free-variable counting and the exact code
/// filter happen at the caller.
fn generate_candidates(cap: VarIndex) -> Vec<Formula> {
    let leaves: Vec<Term> = std::iter::once(Term::Zero)
        .chain((0..=cap).map(Term::Var))
        .collect();
    let eq = |a: &Term, b: &Term| Formula::Eq(a.clone(), b.clone());
    let mut out = Vec::new();

    // Length 3: t=u.
    for a in &leaves {
        for b in &leaves {
            out.push(eq(a, b));
        }
    }
    // Length 6: t=S(u), S(t)=u, and ~(t=u).
    for a in &leaves {
        for b in &leaves {
            let s = Term::Succ(Box::new(b.clone()));
            out.push(Formula::Eq(a.clone(), s.clone()));
            out.push(Formula::Eq(s, a.clone()));
            out.push(eq(a, b).negate());
        }
    }
    // Length 7: t=(u∘v), (u∘v)=t, and all x (t=u).
    for a in &leaves {
        for b in &leaves {
            for c in &leaves {
                for op in [Term::Add, Term::Mul] {
                    let t = op(Box::new(b.clone()), Box::new(c.clone()));
                    out.push(Formula::Eq(a.clone(), t.clone()));
                    out.push(Formula::Eq(t, a.clone()));
                }
            }
            for v in 0..=cap {
                out.push(Formula::Forall(v, Box::new(eq(a, b))));
            }
        }
    }
    out
}
