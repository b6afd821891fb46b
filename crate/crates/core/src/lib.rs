//! Godel coding of a small arithmetic calculus.
//!
//! The crate turns formulas of first-order arithmetic into natural numbers,
//! turns proofs into numbers of numbers, and makes the resulting relations
//! ("m codes a proof of the formula coded by n", and its refutation twin)
//! executable: decidable checks, characteristic functions, bounded proof
//! search, a diagonal enumeration of one-variable formulas, and an auditor
//! that evaluates the classical incompleteness-flavoured claims about these
//! relations on concrete bounded instances.

pub mod auditor;
pub mod calculus;
pub mod codec;
pub mod diagonal;
pub mod lang;

pub use auditor::{
    audit_chain, audit_conditionals, audit_identity, check_char_duality, revalidate, scan_lemma1,
    search_coextensive, write_report, AuditRecord, Truth,
};
pub use calculus::{
    arithmetic_axioms, eval_closed, universe::ProofUniverse, AxiomId, Calculus, EvalOutcome,
    Justification, ProofObject, SearchBudget, Verdict,
};
pub use diagonal::{diag, diag_formula, k_member_bounded, phi, KEvidence, PhiSequence};

pub use codec::{
    decode_formula, decode_proof, decode_seq, encode_seq, formula_code, gl, len_l, neg_code,
    proof_code, CodecError, GoedelNumber,
};
pub use lang::{
    parse_formula, parse_tokens, Formula, NotFreeError, ParseError, Term, Token, VarIndex,
};
