//! The auditor: mechanical evaluation of the claims surrounding the proof
//! and refutation predicates on concrete bounded instances.
//!
//! Every examination emits [`AuditRecord`]s. A record never adjudicates
//! anything beyond the instance it names: `Holds` and `Fails` are verdicts
//! about one bounded, re-checkable evaluation, and claims whose faithful
//! reading quantifies over all numbers are reported as `NotEvaluable` with
//! the bounded surrogate named in the note. Streams are deterministic:
//! rerunning an examination with the same parameters reproduces the same
//! records byte for byte, which is what [`revalidate`] exploits.

mod chain;
mod coextensive;
mod conditionals;
mod identity;
mod lemmas;

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Calculus, SearchBudget};
use crate::codec::GoedelNumber;

pub use chain::audit_chain;
pub use coextensive::search_coextensive;
pub use conditionals::audit_conditionals;
pub use identity::audit_identity;
pub use lemmas::{check_char_duality, scan_lemma1, WitnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truth {
    Holds,
    Fails,
    NotEvaluable,
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::Holds => "Holds",
            Truth::Fails => "Fails",
            Truth::NotEvaluable => "NotEvaluable",
        })
    }
}

/// One evaluated claim instance. Field order is the serialized order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub claim: String,
    pub instance: String,
    pub truth: Truth,
    pub witnesses: Vec<GoedelNumber>,
    pub note: String,
}

impl AuditRecord {
    fn new(claim: &str, instance: &str, truth: Truth, note: String) -> AuditRecord {
        AuditRecord {
            claim: claim.to_string(),
            instance: instance.to_string(),
            truth,
            witnesses: Vec::new(),
            note,
        }
    }

    fn with_witnesses(mut self, witnesses: Vec<GoedelNumber>) -> AuditRecord {
        self.witnesses = witnesses;
        self
    }
}

/// Sorts records into their canonical report order.
pub fn sort_records(records: &mut [AuditRecord]) {
    records.sort_by(|a, b| {
        (a.claim.as_str(), a.instance.as_str()).cmp(&(b.claim.as_str(), b.instance.as_str()))
    });
}

/// First line of every report. No timestamps: identical runs must produce
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunHeader {
    pub report: String,
    pub tool: String,
    pub scope: String,
}

impl RunHeader {
    pub fn new(scope: &str) -> RunHeader {
        RunHeader {
            report: "audit".to_string(),
            tool: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
            scope: scope.to_string(),
        }
    }
}

/// Writes a report: the header line, then the records as JSON lines in
/// canonical order.
pub fn write_report(
    out: &mut impl Write,
    scope: &str,
    records: &mut [AuditRecord],
) -> io::Result<()> {
    sort_records(records);
    let header = serde_json::to_string(&RunHeader::new(scope)).expect("header serializes");
    writeln!(out, "{header}")?;
    for r in records.iter() {
        let line = serde_json::to_string(r).expect("records serialize");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Renders a report to a string.
pub fn report_to_string(scope: &str, records: &mut [AuditRecord]) -> String {
    let mut buf = Vec::new();
    write_report(&mut buf, scope, records).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("reports are UTF-8")
}

/// Named calculus fixtures, so records can carry which calculus an
/// examination ran against and revalidation can reconstruct it. The
/// non-standard ones are deliberately damaged and exist to exercise the
/// failure paths.
pub fn calculus_fixture(name: &str) -> Option<Calculus> {
    match name {
        "standard" => Some(Calculus::standard()),
        // The first arithmetic axiom joined by its own negation: breaks the
        // premise that no axiom enters together with its negation.
        "negated-first-axiom" => {
            let a1 = crate::calculus::arithmetic_axioms()[0].clone();
            Some(Calculus::with_extra_axioms(vec![a1.negate()]))
        }
        // Asserts the first diagonal instance outright, making it provable
        // while its refutation also stays in reach.
        "asserted-diagonal-one" => {
            let d1 = crate::diagonal::diag_formula(1)?;
            Some(Calculus::with_extra_axioms(vec![d1]))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevalidateError {
    #[error("instance field '{0}' is missing")]
    MissingField(String),
    #[error("instance field '{field}' does not parse: {text}")]
    BadField { field: String, text: String },
    #[error("unknown calculus fixture '{0}'")]
    UnknownFixture(String),
    #[error("claim '{0}' is not revalidatable")]
    UnknownClaim(String),
    #[error("rerunning produced no record for this claim and instance")]
    NoMatch,
}

/// The parsed `key=value` pairs of an instance string.
fn parse_instance(instance: &str) -> BTreeMap<&str, &str> {
    instance
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .collect()
}

struct InstanceFields<'a> {
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> InstanceFields<'a> {
    fn of(instance: &'a str) -> InstanceFields<'a> {
        InstanceFields {
            map: parse_instance(instance),
        }
    }

    fn raw(&self, key: &str) -> Result<&'a str, RevalidateError> {
        self.map
            .get(key)
            .copied()
            .ok_or_else(|| RevalidateError::MissingField(key.to_string()))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T, RevalidateError> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| RevalidateError::BadField {
            field: key.to_string(),
            text: raw.to_string(),
        })
    }

    fn calculus(&self) -> Result<Calculus, RevalidateError> {
        let name = self.map.get("calculus").copied().unwrap_or("standard");
        calculus_fixture(name).ok_or_else(|| RevalidateError::UnknownFixture(name.to_string()))
    }
}

/// Formats the optional calculus component of an instance string: empty for
/// the standard calculus, ` calculus=<name>` for a fixture.
fn calculus_tag(fixture_name: &str) -> String {
    if fixture_name == "standard" {
        String::new()
    } else {
        format!(" calculus={fixture_name}")
    }
}

/// Re-runs the examination a record came from and checks that the same
/// claim instance reproduces the same verdict and witnesses. Returns the
/// regenerated record on success.
pub fn revalidate(record: &AuditRecord) -> Result<AuditRecord, RevalidateError> {
    let f = InstanceFields::of(&record.instance);
    let claim = record.claim.as_str();
    let records: Vec<AuditRecord> = if claim == "L1" || claim == "L1:premise" {
        let cap: usize = f.get("cap").unwrap_or(usize::MAX);
        let cap = (cap != usize::MAX).then_some(cap);
        scan_lemma1(
            &f.calculus()?,
            f.raw("calculus").unwrap_or("standard"),
            cap,
            f.get("len")?,
        )
    } else if claim == "L2" || claim == "L3" || claim.starts_with("L4:") {
        check_char_duality(&f.calculus()?, &f.get("w")?, &f.get("y")?)
            .map_err(|_| RevalidateError::NoMatch)?
    } else if claim.starts_with("chain:") {
        audit_chain(
            &f.calculus()?,
            f.get("n")?,
            &f.get("m")?,
            f.get("budget")?,
            f.get("cap")?,
        )
    } else if matches!(claim, "I" | "III" | "IV" | "V" | "VI" | "C") {
        let k: Option<usize> = f.get("k").ok();
        audit_conditionals(&f.calculus()?, f.get("n")?, f.get("budget")?, k)
    } else if claim.starts_with("identity:") {
        audit_identity(&f.calculus()?, f.get("k")?, f.get("n")?, f.get("budget")?)
    } else if claim.starts_with("coext:") {
        let sample = parse_sample(f.raw("sample")?)?;
        search_coextensive(&f.calculus()?, f.get("M")?, &sample, f.get("budget")?)
    } else {
        return Err(RevalidateError::UnknownClaim(record.claim.clone()));
    };
    let again = records
        .into_iter()
        .find(|r| r.claim == record.claim && r.instance == record.instance)
        .ok_or(RevalidateError::NoMatch)?;
    if again.truth == record.truth && again.witnesses == record.witnesses {
        Ok(again)
    } else {
        Err(RevalidateError::NoMatch)
    }
}

fn parse_sample(raw: &str) -> Result<Vec<usize>, RevalidateError> {
    raw.split(',')
        .map(|x| {
            x.trim().parse().map_err(|_| RevalidateError::BadField {
                field: "sample".to_string(),
                text: x.to_string(),
            })
        })
        .collect()
}

/// Renders a sample list the way instance strings carry it.
fn format_sample(sample: &[usize]) -> String {
    sample
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Bounded three-valued truth of a sentence, read off a search verdict:
/// provable counts as true, refutable as false, anything else undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BoundedTruth {
    True,
    False,
    Undecided,
}

impl BoundedTruth {
    fn of(
        calc: &Calculus,
        sentence: &crate::lang::Formula,
        budget: SearchBudget,
    ) -> (BoundedTruth, Option<GoedelNumber>) {
        match calc.decide_bounded(sentence, budget) {
            crate::calculus::Verdict::Provable(w) => (BoundedTruth::True, Some(w)),
            crate::calculus::Verdict::Refutable(w) => (BoundedTruth::False, Some(w)),
            crate::calculus::Verdict::Unknown(_) => (BoundedTruth::Undecided, None),
        }
    }

    fn decided(self) -> Option<bool> {
        match self {
            BoundedTruth::True => Some(true),
            BoundedTruth::False => Some(false),
            BoundedTruth::Undecided => None,
        }
    }
}

impl fmt::Display for BoundedTruth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundedTruth::True => "true",
            BoundedTruth::False => "false",
            BoundedTruth::Undecided => "undecided",
        })
    }
}
