//! A finite, exhaustively checkable space of proof sequences.
//!
//! The universe fixes a deterministic set of lines: the calculus axioms,
//! reflexivity at `x0`/`x1` with their generalizations, two rounds of
//! instantiation instances and implications over the four smallest closed
//! terms, then one round of generalization wraps and modus ponens
//! consequents. Tables link the lines by the two rules, so every sequence
//! over the universe (repetition allowed) is checked in constant time per
//! line, and all valid sequences up to a small length can be enumerated
//! outright.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{as_implication, implication, Calculus};
use crate::codec::{formula_code, GoedelNumber};
use crate::lang::{Formula, VarIndex};

/// Variables the generalization round closes over.
const GEN_VARS: [VarIndex; 2] = [0, 1];

#[derive(Debug)]
pub struct ProofUniverse {
    lines: Vec<Formula>,
    codes: Vec<GoedelNumber>,
    is_ax: Vec<bool>,
    gen_from: Vec<Option<u32>>,
    imp_view: Vec<Option<(u32, u32)>>,
}

impl ProofUniverse {
    /// Builds the universe for a calculus. `line_cap` keeps only the first
    /// so many lines (in spelling order), shrinking the space for quick
    /// demonstrations.
    pub fn build(calc: &Calculus, line_cap: Option<usize>) -> ProofUniverse {
        let mut set: BTreeSet<Formula> = BTreeSet::new();
        for ax in super::arithmetic_axioms() {
            set.insert(ax.clone());
        }
        for ax in calc.extra_axioms() {
            set.insert(ax.clone());
        }
        for v in GEN_VARS {
            let refl = Formula::Eq(crate::lang::Term::Var(v), crate::lang::Term::Var(v));
            set.insert(Formula::Forall(v, Box::new(refl.clone())));
            set.insert(refl);
        }

        let pool = super::search::canonical_closed_terms(4);
        for _ in 0..2 {
            let mut fresh = Vec::new();
            for f in &set {
                let Formula::Forall(v, body) = f else {
                    continue;
                };
                for t in &pool {
                    let inst = body.subst_term(*v, t);
                    fresh.push(implication(f.clone(), inst.clone()));
                    fresh.push(inst);
                }
            }
            set.extend(fresh);
        }

        let wraps: Vec<Formula> = set
            .iter()
            .flat_map(|f| GEN_VARS.map(|v| Formula::Forall(v, Box::new(f.clone()))))
            .collect();
        set.extend(wraps);

        let consequents: Vec<Formula> = set
            .iter()
            .filter_map(|f| {
                let (a, c) = as_implication(f)?;
                set.contains(a).then(|| c.clone())
            })
            .collect();
        set.extend(consequents);

        let mut lines: Vec<Formula> = set.into_iter().collect();
        lines.sort_by_cached_key(Formula::to_string);
        if let Some(cap) = line_cap {
            lines.truncate(cap);
        }

        let codes: Vec<GoedelNumber> = lines.iter().map(formula_code).collect();
        let is_ax: Vec<bool> = lines.iter().map(|f| calc.is_axiom(f).is_some()).collect();
        let index = |f: &Formula| lines.binary_search_by_key(&f.to_string(), Formula::to_string);
        let gen_from: Vec<Option<u32>> = lines
            .iter()
            .map(|f| match f {
                Formula::Forall(_, body) => index(body).ok().map(|i| i as u32),
                _ => None,
            })
            .collect();
        let imp_view: Vec<Option<(u32, u32)>> = lines
            .iter()
            .map(|f| {
                let (a, c) = as_implication(f)?;
                Some((index(a).ok()? as u32, index(c).ok()? as u32))
            })
            .collect();

        ProofUniverse {
            lines,
            codes,
            is_ax,
            gen_from,
            imp_view,
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Formula] {
        &self.lines
    }

    pub fn line(&self, i: u32) -> &Formula {
        &self.lines[i as usize]
    }

    /// The formula code of line `i`.
    pub fn code(&self, i: u32) -> &GoedelNumber {
        &self.codes[i as usize]
    }

    /// The proof code of a sequence of universe lines.
    pub fn proof_code_of(&self, seq: &[u32]) -> GoedelNumber {
        let exps = seq
            .iter()
            .map(|&i| {
                self.codes[i as usize]
                    .to_biguint()
                    .expect("universe line codes are small enough to materialize")
            })
            .collect();
        GoedelNumber::from_exponents(exps)
    }

    /// May line `t` follow the lines of `earlier`?
    fn step_ok(&self, t: u32, earlier: &[u32]) -> bool {
        if self.is_ax[t as usize] {
            return true;
        }
        if let Some(b) = self.gen_from[t as usize] {
            if earlier.contains(&b) {
                return true;
            }
        }
        earlier.iter().any(|&m| {
            matches!(self.imp_view[m as usize], Some((a, c)) if c == t && earlier.contains(&a))
        })
    }

    /// Is the sequence of universe lines a valid proof?
    pub fn is_valid_sequence(&self, seq: &[u32]) -> bool {
        !seq.is_empty()
            && seq
                .iter()
                .enumerate()
                .all(|(k, &t)| self.step_ok(t, &seq[..k]))
    }

    /// Calls `visit` with every valid sequence of length `1..=max_len`,
    /// repetition allowed. The traversal is parallel over first lines;
    /// `visit` must handle concurrent calls.
    pub fn for_each_valid_proof<F>(&self, max_len: usize, visit: F)
    where
        F: Fn(&[u32]) + Sync,
    {
        if max_len == 0 {
            return;
        }
        let n = self.lines.len() as u32;
        (0..n).into_par_iter().for_each(|i| {
            if !self.is_ax[i as usize] {
                return;
            }
            let mut seq = vec![i];
            visit(&seq);
            self.extend_all(&mut seq, max_len, &visit);
        });
    }

    fn extend_all<F>(&self, seq: &mut Vec<u32>, max_len: usize, visit: &F)
    where
        F: Fn(&[u32]) + Sync,
    {
        if seq.len() >= max_len {
            return;
        }
        for t in 0..self.lines.len() as u32 {
            if self.step_ok(t, seq) {
                seq.push(t);
                visit(seq);
                self.extend_all(seq, max_len, visit);
                seq.pop();
            }
        }
    }

    /// Number of valid sequences of length `1..=max_len`.
    pub fn count_valid(&self, max_len: usize) -> u64 {
        use std::sync::atomic::{AtomicU64, Ordering};
        let count = AtomicU64::new(0);
        self.for_each_valid_proof(max_len, |_| {
            count.fetch_add(1, Ordering::Relaxed);
        });
        count.into_inner()
    }
}
