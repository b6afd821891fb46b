//! The proof calculus: a Hilbert-style system over the arithmetic language,
//! with decidable proof-sequence recognition and the number-level predicates
//! built on it.
//!
//! `bw` recognizes valid proof sequences from their second-level codes;
//! `proves` is the relation "x codes a proof whose last line is the formula
//! coded by y", `refutes` its twin ending in the negation. Both are total
//! over all numbers: anything that fails to decode is simply not a proof.

mod axioms;
mod eval;
mod prooffile;
mod search;
pub mod universe;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::codec::{decode_proof, formula_code, neg_code, proof_code, GoedelNumber};
use crate::lang::{Formula, VarIndex};

pub use axioms::{arithmetic_axioms, as_implication, implication, AxiomId, ARITHMETIC_AXIOMS};
pub use eval::{eval_closed, EvalOutcome, OpenFormulaError};
pub use prooffile::{format_proof, parse_proof_text, ProofFileError};

/// Why a proof line is allowed: an axiom instance, or an application of one
/// of the two rules to earlier lines (1-based indices, strictly smaller than
/// the line's own number).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomId),
    ModusPonens { premise: usize, implication: usize },
    Generalization { premise: usize, var: VarIndex },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id) => write!(f, "ax:{id}"),
            Justification::ModusPonens {
                premise,
                implication,
            } => write!(f, "mp:{premise},{implication}"),
            Justification::Generalization { premise, var } => write!(f, "gen:{premise},x{var}"),
        }
    }
}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(name) = s.strip_prefix("ax:") {
            let id = AxiomId::from_name(name.trim())
                .ok_or_else(|| format!("unknown axiom id '{}'", name.trim()))?;
            return Ok(Justification::Axiom(id));
        }
        if let Some(rest) = s.strip_prefix("mp:") {
            let (i, j) = rest
                .split_once(',')
                .ok_or_else(|| format!("mp needs two indices (got '{rest}')"))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad line index '{}'", x.trim()))
            };
            return Ok(Justification::ModusPonens {
                premise: parse(i)?,
                implication: parse(j)?,
            });
        }
        if let Some(rest) = s.strip_prefix("gen:") {
            let (i, v) = rest
                .split_once(',')
                .ok_or_else(|| format!("gen needs an index and a variable (got '{rest}')"))?;
            let premise = i
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("bad line index '{}'", i.trim()))?;
            let var = v
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse::<VarIndex>().ok())
                .ok_or_else(|| format!("bad variable '{}'", v.trim()))?;
            return Ok(Justification::Generalization { premise, var });
        }
        Err(format!("unknown justification '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("a proof needs at least one line")]
    Empty,
    #[error("{lines} lines but {justs} justifications")]
    LengthMismatch { lines: usize, justs: usize },
    #[error("line {line}: premise index {index} does not point at an earlier line")]
    BadPremiseIndex { line: usize, index: usize },
    #[error("line {line}: not an instance of axiom {id}")]
    AxiomMismatch { line: usize, id: AxiomId },
    #[error("line {line}: modus ponens premises do not yield this line")]
    MpMismatch { line: usize },
    #[error("line {line}: not a generalization of the cited premise")]
    GenMismatch { line: usize },
}

/// A checked proof: lines plus one valid justification per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofObject {
    lines: Vec<Formula>,
    justs: Vec<Justification>,
}

impl ProofObject {
    /// Validates every justification against the earlier lines.
    pub fn new(
        calc: &Calculus,
        lines: Vec<Formula>,
        justs: Vec<Justification>,
    ) -> Result<ProofObject, ProofError> {
        calc.check_proof(&lines, &justs)?;
        Ok(ProofObject { lines, justs })
    }

    /// Builds the proof from bare lines, inferring a justification for each
    /// (the deterministic one [`Calculus::immediate_consequence`] picks).
    pub fn infer(calc: &Calculus, lines: Vec<Formula>) -> Result<ProofObject, ProofError> {
        let justs = calc.infer_justifications(&lines)?;
        Ok(ProofObject { lines, justs })
    }

    pub fn lines(&self) -> &[Formula] {
        &self.lines
    }

    pub fn justifications(&self) -> &[Justification] {
        &self.justs
    }

    pub fn last(&self) -> &Formula {
        self.lines.last().expect("proofs are nonempty")
    }

    /// The proof's second-level code.
    pub fn code(&self) -> GoedelNumber {
        proof_code(&self.lines).expect("proofs are nonempty with codable lines")
    }
}

/// Outcome of a bounded decision: a witness either way, or an honest
/// "nothing within this budget".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Provable(GoedelNumber),
    Refutable(GoedelNumber),
    Unknown(SearchBudget),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Provable(w) => write!(f, "provable, witness {w}"),
            Verdict::Refutable(w) => write!(f, "refutable, witness {w}"),
            Verdict::Unknown(b) => write!(f, "unknown within budget {b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("budget components must all be positive")]
pub struct BudgetError;

/// Limits for bounded proof search: proof length, per-line formula size
/// (numerals counting one), and the number of closed terms instantiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    max_lines: usize,
    max_formula_size: u64,
    pool_cap: usize,
}

impl SearchBudget {
    pub fn new(
        max_lines: usize,
        max_formula_size: u64,
        pool_cap: usize,
    ) -> Result<Self, BudgetError> {
        if max_lines == 0 || max_formula_size == 0 || pool_cap == 0 {
            return Err(BudgetError);
        }
        Ok(SearchBudget {
            max_lines,
            max_formula_size,
            pool_cap,
        })
    }

    pub fn max_lines(&self) -> usize {
        self.max_lines
    }

    pub fn max_formula_size(&self) -> u64 {
        self.max_formula_size
    }

    pub fn pool_cap(&self) -> usize {
        self.pool_cap
    }
}

impl fmt::Display for SearchBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.max_lines, self.max_formula_size, self.pool_cap
        )
    }
}

impl FromStr for SearchBudget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [l, m, p] = parts.as_slice() else {
            return Err(format!("budget must be L,S,P (got '{s}')"));
        };
        let parse = |x: &str| {
            x.parse::<u64>()
                .map_err(|_| format!("bad budget component '{x}'"))
        };
        SearchBudget::new(parse(l)? as usize, parse(m)?, parse(p)? as usize)
            .map_err(|e| e.to_string())
    }
}

/// The calculus itself. The standard one carries the schema base and A1–A7;
/// extra axioms can be injected to build deliberately inconsistent fixtures
/// (the auditor uses this to exercise the consistency premise).
#[derive(Debug, Clone, Default)]
pub struct Calculus {
    extra_axioms: Vec<Formula>,
}

impl Calculus {
    pub fn standard() -> Calculus {
        Calculus::default()
    }

    pub fn with_extra_axioms(extra_axioms: Vec<Formula>) -> Calculus {
        Calculus { extra_axioms }
    }

    pub fn extra_axioms(&self) -> &[Formula] {
        &self.extra_axioms
    }

    /// Schema or axiom id when the formula is an axiom. Total.
    pub fn is_axiom(&self, f: &Formula) -> Option<AxiomId> {
        if let Some(id) = axioms::schema_id(f) {
            return Some(id);
        }
        self.extra_axioms
            .iter()
            .position(|a| a == f)
            .map(|k| AxiomId::Extra(k as u16))
    }

    /// Is the formula an instance of the specific axiom id?
    fn is_instance_of(&self, f: &Formula, id: AxiomId) -> bool {
        match id {
            AxiomId::Extra(k) => self.extra_axioms.get(k as usize) == Some(f),
            _ => axioms::is_instance(f, id),
        }
    }

    /// Finds a rule application deriving `f` from `earlier`, if any. Modus
    /// ponens is preferred over generalization; ties break to the smallest
    /// (premise, implication) pair, then the smallest generalization premise.
    pub fn immediate_consequence(&self, f: &Formula, earlier: &[Formula]) -> Option<Justification> {
        for (i, premise) in earlier.iter().enumerate() {
            for (j, imp) in earlier.iter().enumerate() {
                if let Some((p, q)) = as_implication(imp) {
                    if p == premise && q == f {
                        return Some(Justification::ModusPonens {
                            premise: i + 1,
                            implication: j + 1,
                        });
                    }
                }
            }
        }
        if let Formula::Forall(v, body) = f {
            if let Some(i) = earlier.iter().position(|e| e == &**body) {
                return Some(Justification::Generalization {
                    premise: i + 1,
                    var: *v,
                });
            }
        }
        None
    }

    /// Is every line an axiom or an immediate consequence of earlier lines?
    pub fn is_proof_sequence(&self, lines: &[Formula]) -> bool {
        !lines.is_empty()
            && lines.iter().enumerate().all(|(k, f)| {
                self.is_axiom(f).is_some() || self.immediate_consequence(f, &lines[..k]).is_some()
            })
    }

    /// Validates declared justifications line by line.
    pub fn check_proof(
        &self,
        lines: &[Formula],
        justs: &[Justification],
    ) -> Result<(), ProofError> {
        if lines.is_empty() {
            return Err(ProofError::Empty);
        }
        if lines.len() != justs.len() {
            return Err(ProofError::LengthMismatch {
                lines: lines.len(),
                justs: justs.len(),
            });
        }
        for (k, (f, j)) in lines.iter().zip(justs).enumerate() {
            let line = k + 1;
            let fetch = |index: usize| -> Result<&Formula, ProofError> {
                if index == 0 || index > k {
                    Err(ProofError::BadPremiseIndex { line, index })
                } else {
                    Ok(&lines[index - 1])
                }
            };
            match *j {
                Justification::Axiom(id) => {
                    if !self.is_instance_of(f, id) {
                        return Err(ProofError::AxiomMismatch { line, id });
                    }
                }
                Justification::ModusPonens {
                    premise,
                    implication,
                } => {
                    let p = fetch(premise)?;
                    let imp = fetch(implication)?;
                    let applies = as_implication(imp)
                        .map(|(ante, cons)| ante == p && cons == f)
                        .unwrap_or(false);
                    if !applies {
                        return Err(ProofError::MpMismatch { line });
                    }
                }
                Justification::Generalization { premise, var } => {
                    let p = fetch(premise)?;
                    let applies = matches!(f, Formula::Forall(v, body)
                        if *v == var && &**body == p);
                    if !applies {
                        return Err(ProofError::GenMismatch { line });
                    }
                }
            }
        }
        Ok(())
    }

    /// One deterministic justification per line, or the first failure.
    pub fn infer_justifications(
        &self,
        lines: &[Formula],
    ) -> Result<Vec<Justification>, ProofError> {
        if lines.is_empty() {
            return Err(ProofError::Empty);
        }
        lines
            .iter()
            .enumerate()
            .map(|(k, f)| {
                if let Some(id) = self.is_axiom(f) {
                    Ok(Justification::Axiom(id))
                } else if let Some(j) = self.immediate_consequence(f, &lines[..k]) {
                    Ok(j)
                } else {
                    Err(ProofError::MpMismatch { line: k + 1 })
                }
            })
            .collect()
    }

    /// The Bw predicate: does `x` code a valid proof sequence? Total.
    pub fn bw(&self, x: &GoedelNumber) -> bool {
        match decode_proof(x) {
            Ok(lines) => self.is_proof_sequence(&lines),
            Err(_) => false,
        }
    }

    /// The xBy predicate: `x` codes a proof whose last line is the formula
    /// coded by `y`. Total.
    pub fn proves(&self, x: &GoedelNumber, y: &GoedelNumber) -> bool {
        match decode_proof(x) {
            Ok(lines) => {
                self.is_proof_sequence(&lines)
                    && formula_code(lines.last().expect("nonempty")) == *y
            }
            Err(_) => false,
        }
    }

    /// The xWy predicate: `x` codes a proof whose last line is the negation
    /// of the formula coded by `y`. Total.
    pub fn refutes(&self, x: &GoedelNumber, y: &GoedelNumber) -> bool {
        let Ok(neg) = neg_code(y) else {
            return false;
        };
        match decode_proof(x) {
            Ok(lines) => {
                self.is_proof_sequence(&lines)
                    && formula_code(lines.last().expect("nonempty")) == neg
            }
            Err(_) => false,
        }
    }

    /// Characteristic function of xBy: 0 when it holds, 1 otherwise.
    pub fn proof_char(&self, x: &GoedelNumber, y: &GoedelNumber) -> u8 {
        if self.proves(x, y) {
            0
        } else {
            1
        }
    }

    /// Characteristic function of xWy: 0 when it holds, 1 otherwise.
    pub fn refutation_char(&self, x: &GoedelNumber, y: &GoedelNumber) -> u8 {
        if self.refutes(x, y) {
            0
        } else {
            1
        }
    }
}
