//! Plain-text proof files: one step per line in the shape
//! `<formula> ; <justification>`. Blank lines and lines starting with `#`
//! are skipped.

use thiserror::Error;

use super::{Justification, ProofObject};
use crate::lang::{parse_formula, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("line {line}: missing ';' between formula and justification")]
    MissingSeparator { line: usize },
    #[error("line {line}: {msg}")]
    BadFormula { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    BadJustification { line: usize, msg: String },
    #[error("no proof steps found")]
    Empty,
}

/// Parses a proof file into lines and declared justifications. Validation
/// against the calculus is a separate step ([`ProofObject::new`]).
pub fn parse_proof_text(text: &str) -> Result<(Vec<Formula>, Vec<Justification>), ProofFileError> {
    let mut lines = Vec::new();
    let mut justs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let (formula_part, just_part) = content
            .rsplit_once(';')
            .ok_or(ProofFileError::MissingSeparator { line })?;
        let f = parse_formula(formula_part).map_err(|e| ProofFileError::BadFormula {
            line,
            msg: e.to_string(),
        })?;
        let j: Justification = just_part
            .parse()
            .map_err(|msg| ProofFileError::BadJustification { line, msg })?;
        lines.push(f);
        justs.push(j);
    }
    if lines.is_empty() {
        return Err(ProofFileError::Empty);
    }
    Ok((lines, justs))
}

/// Renders a checked proof in the file format, one step per line.
pub fn format_proof(proof: &ProofObject) -> String {
    proof
        .lines()
        .iter()
        .zip(proof.justifications())
        .map(|(f, j)| format!("{f} ; {j}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{AxiomId, Calculus};

    const REFUTATION: &str = "\
# refutes S(0)=0
all x0 ~(S(x0)=0) ; ax:a1

(all x0 ~(S(x0)=0) -> ~(S(0)=0)) ; ax:q1
~(S(0)=0) ; mp:1,2  # modus ponens
";

    #[test]
    fn parses_comments_and_blanks() {
        let (lines, justs) = parse_proof_text(REFUTATION).unwrap();
        assert_eq!(lines.len(), 3);
        assert_eq!(justs[0], Justification::Axiom(AxiomId::A1));
        assert_eq!(
            justs[2],
            Justification::ModusPonens {
                premise: 1,
                implication: 2
            }
        );
        assert!(Calculus::standard().check_proof(&lines, &justs).is_ok());
    }

    #[test]
    fn round_trips_through_format() {
        let calc = Calculus::standard();
        let (lines, justs) = parse_proof_text(REFUTATION).unwrap();
        let proof = ProofObject::new(&calc, lines, justs).unwrap();
        let text = format_proof(&proof);
        let (lines2, justs2) = parse_proof_text(&text).unwrap();
        assert_eq!(lines2, proof.lines());
        assert_eq!(justs2, proof.justifications());
    }

    #[test]
    fn reports_positions_of_errors() {
        assert_eq!(
            parse_proof_text("x0=x0 ax:refl"),
            Err(ProofFileError::MissingSeparator { line: 1 })
        );
        assert!(matches!(
            parse_proof_text("x0=x0 ; ax:nope"),
            Err(ProofFileError::BadJustification { line: 1, .. })
        ));
        assert!(matches!(
            parse_proof_text("\n\nx0= ; ax:refl"),
            Err(ProofFileError::BadFormula { line: 3, .. })
        ));
        assert_eq!(
            parse_proof_text("# nothing\n\n"),
            Err(ProofFileError::Empty)
        );
    }

    #[test]
    fn justification_strings_round_trip() {
        for s in [
            "ax:a1",
            "ax:refl",
            "ax:subst-eq",
            "mp:2,1",
            "gen:1,x0",
            "ax:extra3",
        ] {
            let j: Justification = s.parse().unwrap();
            assert_eq!(j.to_string(), s);
        }
        assert!("ax:b9".parse::<Justification>().is_err());
        assert!("mp:1".parse::<Justification>().is_err());
        assert!("gen:1,y0".parse::<Justification>().is_err());
    }
}
