//! Abstract syntax, canonical text form, and substitution for the object
//! language: first-order arithmetic over `0`, `S`, `+`, `*`, `=`, with
//! negation, disjunction and universal quantification as the only
//! connectives kept in trees.
//!
//! The surface syntax additionally accepts `->`, `&` and `exists`, which the
//! parser expands immediately; no tree ever contains them. Printing is
//! canonical: `parse(print(f)) == f` for every tree, distinct trees print to
//! distinct strings, and whitespace between tokens is insignificant on input.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index `i` of a variable `x_i`.
pub type VarIndex = u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Var(VarIndex),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(VarIndex, Box<Formula>),
}

/// One symbol of the token alphabet shared by the printer, the parser and
/// the numeric codec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Zero,
    Succ,
    Not,
    Or,
    All,
    LParen,
    RParen,
    Eq,
    Plus,
    Star,
    Var(VarIndex),
}

impl Token {
    pub fn spelling(&self) -> String {
        match self {
            Token::Zero => "0".to_string(),
            Token::Succ => "S".to_string(),
            Token::Not => "~".to_string(),
            Token::Or => "|".to_string(),
            Token::All => "all".to_string(),
            Token::LParen => "(".to_string(),
            Token::RParen => ")".to_string(),
            Token::Eq => "=".to_string(),
            Token::Plus => "+".to_string(),
            Token::Star => "*".to_string(),
            Token::Var(i) => format!("x{i}"),
        }
    }
}

impl Term {
    /// The closed term `S(S(...S(0)...))` with `n` applications of `S`.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::Succ(Box::new(t));
        }
        t
    }

    /// Inverse of [`Term::numeral`]: `Some(n)` exactly for numeral-shaped terms.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Succ(t) => {
                    n = n.checked_add(1)?;
                    cur = t;
                }
                _ => return None,
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(t) => t.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    /// Structural size with numerals collapsed: a numeral counts as a single
    /// unit no matter how many `S` it stacks, every other constructor counts
    /// one. This is the measure budgets use, so raising a numeral never
    /// pushes a line over a size limit.
    pub fn size(&self) -> u64 {
        if self.as_numeral().is_some() {
            return 1;
        }
        match self {
            Term::Zero => 1,
            Term::Var(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarIndex>) {
        match self {
            Term::Zero => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn push_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Term::Zero => out.push(Token::Zero),
            Term::Var(i) => out.push(Token::Var(*i)),
            Term::Succ(t) => {
                out.push(Token::Succ);
                out.push(Token::LParen);
                t.push_tokens(out);
                out.push(Token::RParen);
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                out.push(Token::LParen);
                a.push_tokens(out);
                out.push(match self {
                    Term::Add(..) => Token::Plus,
                    _ => Token::Star,
                });
                b.push_tokens(out);
                out.push(Token::RParen);
            }
        }
    }

    fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        out.insert(self.clone());
        match self {
            Term::Zero | Term::Var(_) => {}
            Term::Succ(t) => t.collect_subterms(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_subterms(out);
                b.collect_subterms(out);
            }
        }
    }

    fn subst_var(&self, var: VarIndex, replacement: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(i) => {
                if *i == var {
                    replacement.clone()
                } else {
                    Term::Var(*i)
                }
            }
            Term::Succ(t) => Term::Succ(Box::new(t.subst_var(var, replacement))),
            Term::Add(a, b) => Term::Add(
                Box::new(a.subst_var(var, replacement)),
                Box::new(b.subst_var(var, replacement)),
            ),
            Term::Mul(a, b) => Term::Mul(
                Box::new(a.subst_var(var, replacement)),
                Box::new(b.subst_var(var, replacement)),
            ),
        }
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<VarIndex> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<VarIndex>, out: &mut BTreeSet<VarIndex>) {
        match self {
            Formula::Eq(a, b) => {
                let mut vs = BTreeSet::new();
                a.collect_vars(&mut vs);
                b.collect_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(p) => p.collect_free(bound, out),
            Formula::Or(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Formula::Forall(v, p) => {
                let fresh = bound.insert(*v);
                p.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Size under the same numeral-collapsing measure as [`Term::size`].
    pub fn size(&self) -> u64 {
        match self {
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::Not(p) => 1 + p.size(),
            Formula::Or(p, q) => 1 + p.size() + q.size(),
            Formula::Forall(_, p) => 1 + p.size(),
        }
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Formula::Eq(a, b) => {
                a.push_tokens(out);
                out.push(Token::Eq);
                b.push_tokens(out);
            }
            Formula::Not(p) => {
                out.push(Token::Not);
                out.push(Token::LParen);
                p.push_tokens(out);
                out.push(Token::RParen);
            }
            Formula::Or(p, q) => {
                out.push(Token::LParen);
                p.push_tokens(out);
                out.push(Token::Or);
                q.push_tokens(out);
                out.push(Token::RParen);
            }
            Formula::Forall(v, p) => {
                out.push(Token::All);
                out.push(Token::Var(*v));
                out.push(Token::LParen);
                p.push_tokens(out);
                out.push(Token::RParen);
            }
        }
    }

    /// Plain syntactic negation. Never simplifies: negating `~(p)` yields
    /// `~(~(p))`, not `p`.
    pub fn negate(&self) -> Formula {
        Formula::Not(Box::new(self.clone()))
    }

    /// Replaces every free occurrence of `x_var` by the numeral for `n`.
    /// Numerals are closed, so no capture is possible. Errors when `x_var`
    /// has no free occurrence.
    pub fn subst_numeral(&self, var: VarIndex, n: u64) -> Result<Formula, NotFreeError> {
        if !self.free_vars().contains(&var) {
            return Err(NotFreeError { var });
        }
        Ok(self.subst_inner(var, &Term::numeral(n)))
    }

    /// Replaces every free occurrence of `x_var` by the closed term `t`.
    /// Vacuous substitution is allowed (the result is then the formula
    /// itself); the replacement must be closed, since nothing here guards
    /// against capture.
    pub fn subst_term(&self, var: VarIndex, t: &Term) -> Formula {
        debug_assert!(t.is_closed());
        self.subst_inner(var, t)
    }

    /// Every closed term occurring anywhere inside the formula, including
    /// nested subterms.
    pub fn closed_subterms(&self) -> BTreeSet<Term> {
        let mut all = BTreeSet::new();
        self.collect_terms(&mut all);
        all.into_iter().filter(Term::is_closed).collect()
    }

    fn collect_terms(&self, out: &mut BTreeSet<Term>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_subterms(out);
                b.collect_subterms(out);
            }
            Formula::Not(p) => p.collect_terms(out),
            Formula::Or(p, q) => {
                p.collect_terms(out);
                q.collect_terms(out);
            }
            Formula::Forall(_, p) => p.collect_terms(out),
        }
    }

    fn subst_inner(&self, var: VarIndex, replacement: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => {
                Formula::Eq(a.subst_var(var, replacement), b.subst_var(var, replacement))
            }
            Formula::Not(p) => Formula::Not(Box::new(p.subst_inner(var, replacement))),
            Formula::Or(p, q) => Formula::Or(
                Box::new(p.subst_inner(var, replacement)),
                Box::new(q.subst_inner(var, replacement)),
            ),
            Formula::Forall(v, p) => {
                if *v == var {
                    self.clone()
                } else {
                    Formula::Forall(*v, Box::new(p.subst_inner(var, replacement)))
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(i) => write!(f, "x{i}"),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Add(a, b) => write!(f, "({a}+{b})"),
            Term::Mul(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Not(p) => write!(f, "~({p})"),
            Formula::Or(p, q) => write!(f, "({p}|{q})"),
            Formula::Forall(v, p) => write!(f, "all x{v} ({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("variable x{var} has no free occurrence to substitute")]
pub struct NotFreeError {
    pub var: VarIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lex {
    Tok(Token),
    Arrow,
    Amp,
    Exists,
}

#[derive(Debug, Clone, Copy)]
struct Lexeme {
    lex: Lex,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Lexeme>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let lex = match c {
            b'0' => {
                i += 1;
                Lex::Tok(Token::Zero)
            }
            b'~' => {
                i += 1;
                Lex::Tok(Token::Not)
            }
            b'|' => {
                i += 1;
                Lex::Tok(Token::Or)
            }
            b'(' => {
                i += 1;
                Lex::Tok(Token::LParen)
            }
            b')' => {
                i += 1;
                Lex::Tok(Token::RParen)
            }
            b'=' => {
                i += 1;
                Lex::Tok(Token::Eq)
            }
            b'+' => {
                i += 1;
                Lex::Tok(Token::Plus)
            }
            b'*' => {
                i += 1;
                Lex::Tok(Token::Star)
            }
            b'&' => {
                i += 1;
                Lex::Amp
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Lex::Arrow
                } else {
                    return Err(ParseError {
                        pos,
                        msg: "expected '>' after '-'".to_string(),
                    });
                }
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "S" => Lex::Tok(Token::Succ),
                    "all" => Lex::Tok(Token::All),
                    "exists" => Lex::Exists,
                    _ if word.starts_with('x') && word.len() > 1 => {
                        let digits = &word[1..];
                        if !digits.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(ParseError {
                                pos,
                                msg: format!("malformed variable '{word}'"),
                            });
                        }
                        if digits.len() > 1 && digits.starts_with('0') {
                            return Err(ParseError {
                                pos,
                                msg: format!("variable index with leading zero in '{word}'"),
                            });
                        }
                        let idx: VarIndex = digits.parse().map_err(|_| ParseError {
                            pos,
                            msg: format!("variable index out of range in '{word}'"),
                        })?;
                        Lex::Tok(Token::Var(idx))
                    }
                    _ => {
                        return Err(ParseError {
                            pos,
                            msg: format!("unknown word '{word}'"),
                        })
                    }
                }
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap();
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push(Lexeme { lex, pos });
    }
    Ok(out)
}

struct Parser<'a> {
    lexemes: &'a [Lexeme],
    text_len: usize,
    i: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Lex> {
        self.lexemes.get(self.i).map(|l| l.lex)
    }

    fn pos(&self) -> usize {
        self.lexemes
            .get(self.i)
            .map(|l| l.pos)
            .unwrap_or(self.text_len)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Lex> {
        let l = self.peek();
        if l.is_some() {
            self.i += 1;
        }
        l
    }

    fn expect(&mut self, want: Lex, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(l) if l == want => {
                self.i += 1;
                Ok(())
            }
            Some(_) => Err(self.err(format!("expected {what}"))),
            None => Err(self.err(format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expect_var(&mut self) -> Result<VarIndex, ParseError> {
        match self.peek() {
            Some(Lex::Tok(Token::Var(v))) => {
                self.i += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a variable")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Lex::Tok(Token::Zero)) => {
                self.bump();
                Ok(Term::Zero)
            }
            Some(Lex::Tok(Token::Var(v))) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Some(Lex::Tok(Token::Succ)) => {
                self.bump();
                self.expect(Lex::Tok(Token::LParen), "'(' after 'S'")?;
                let t = self.term()?;
                self.expect(Lex::Tok(Token::RParen), "')' closing 'S('")?;
                Ok(Term::Succ(Box::new(t)))
            }
            Some(Lex::Tok(Token::LParen)) => {
                self.bump();
                let a = self.term()?;
                let op = self.bump();
                let mk = match op {
                    Some(Lex::Tok(Token::Plus)) => Term::Add as fn(_, _) -> Term,
                    Some(Lex::Tok(Token::Star)) => Term::Mul as fn(_, _) -> Term,
                    _ => {
                        self.i -= 1;
                        return Err(self.err("expected '+' or '*' in a compound term"));
                    }
                };
                let b = self.term()?;
                self.expect(Lex::Tok(Token::RParen), "')' closing a compound term")?;
                Ok(mk(Box::new(a), Box::new(b)))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let a = self.term()?;
        self.expect(Lex::Tok(Token::Eq), "'=' after a term")?;
        let b = self.term()?;
        Ok(Formula::Eq(a, b))
    }

    fn quantified(&mut self, exists: bool) -> Result<Formula, ParseError> {
        self.bump();
        let v = self.expect_var()?;
        // The body is any formula; the parens the printer always emits are
        // absorbed either by the body's own connective or as grouping.
        let body = self.formula()?;
        Ok(if exists {
            Formula::Not(Box::new(Formula::Forall(
                v,
                Box::new(Formula::Not(Box::new(body))),
            )))
        } else {
            Formula::Forall(v, Box::new(body))
        })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Lex::Tok(Token::Not)) => {
                self.bump();
                self.expect(Lex::Tok(Token::LParen), "'(' after '~'")?;
                let p = self.formula()?;
                self.expect(Lex::Tok(Token::RParen), "')' closing '~('")?;
                Ok(Formula::Not(Box::new(p)))
            }
            Some(Lex::Tok(Token::All)) => self.quantified(false),
            Some(Lex::Exists) => self.quantified(true),
            Some(Lex::Tok(Token::Zero | Token::Succ | Token::Var(_))) => self.atom(),
            Some(Lex::Tok(Token::LParen)) => {
                // Three readings start with '(': an atom whose left term is
                // parenthesised, a binary connective, or redundant grouping
                // around a formula. Try the atom first; the other two share
                // a prefix and are told apart at the operator position.
                let save = self.i;
                if let Ok(at) = self.atom() {
                    return Ok(at);
                }
                self.i = save;
                self.bump();
                let p = self.formula()?;
                match self.peek() {
                    Some(Lex::Tok(Token::Or)) | Some(Lex::Arrow) | Some(Lex::Amp) => {
                        let op = self.bump().unwrap();
                        let q = self.formula()?;
                        self.expect(Lex::Tok(Token::RParen), "')' closing a binary formula")?;
                        Ok(match op {
                            Lex::Tok(Token::Or) => Formula::Or(Box::new(p), Box::new(q)),
                            Lex::Arrow => {
                                Formula::Or(Box::new(Formula::Not(Box::new(p))), Box::new(q))
                            }
                            _ => Formula::Not(Box::new(Formula::Or(
                                Box::new(Formula::Not(Box::new(p))),
                                Box::new(Formula::Not(Box::new(q))),
                            ))),
                        })
                    }
                    Some(Lex::Tok(Token::RParen)) => {
                        self.bump();
                        Ok(p)
                    }
                    _ => Err(self.err("expected '|', '->', '&' or ')' after a formula")),
                }
            }
            Some(_) => Err(self.err("expected a formula")),
            None => Err(self.err("unexpected end of input, expected a formula")),
        }
    }
}

/// Parses surface text (abbreviations allowed) into a tree.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let lexemes = lex(text)?;
    let mut p = Parser {
        lexemes: &lexemes,
        text_len: text.len(),
        i: 0,
    };
    let f = p.formula()?;
    if p.i != lexemes.len() {
        return Err(p.err("trailing input after a complete formula"));
    }
    Ok(f)
}

/// Parses a token string, i.e. the alphabet the codec works over. Token
/// strings carry no abbreviations; offsets in errors refer to a spaced
/// rendering of the tokens.
pub fn parse_tokens(tokens: &[Token]) -> Result<Formula, ParseError> {
    let text = tokens
        .iter()
        .map(Token::spelling)
        .collect::<Vec<_>>()
        .join(" ");
    let f = parse_formula(&text)?;
    debug_assert_eq!(f.tokens(), tokens);
    Ok(f)
}
