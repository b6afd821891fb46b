//! Prime-exponent coding of token strings and of proof sequences.
//!
//! A formula is coded as `Π pᵢ^cᵢ` over the symbol codes `cᵢ` of its printed
//! token string (`p₁ = 2`); a proof is coded the same way one level up, with
//! whole formula codes as the exponents. Second-level codes are astronomical
//! (the smallest one-line proof code is `2^143489070`), so [`GoedelNumber`]
//! keeps large numbers in factored form and compares them exactly without
//! ever materializing: equal numbers have equal exponent vectors, and
//! distinct numbers are separated by driving a fixed-point `log2`
//! approximation to whatever precision the gap demands.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lang::{parse_tokens, Formula, ParseError, Token};

/// Numbers whose size is at most this many bits are stored as plain values;
/// larger products stay factored.
const MATERIALIZE_BIT_LIMIT: u64 = 1 << 20;

/// Absolute ceiling for on-demand materialization (`to_biguint`).
const HARD_MATERIALIZE_CAP: u64 = 1 << 26;

/// The `i`-th prime, 0-based: `prime(0) = 2`.
pub fn prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let cache = PRIMES.get_or_init(|| Mutex::new(vec![2, 3, 5, 7, 11, 13]));
    let mut primes = cache.lock().unwrap();
    while primes.len() <= i {
        let mut candidate = primes.last().unwrap() + 2;
        while !primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            candidate += 2;
        }
        primes.push(candidate);
    }
    primes[i]
}

/// The fixed code of one token. Total; variable `xᵢ` maps to `21 + 2i`.
pub fn symbol_code(t: &Token) -> BigUint {
    let small: u64 = match t {
        Token::Zero => 1,
        Token::Succ => 3,
        Token::Not => 5,
        Token::Or => 7,
        Token::All => 9,
        Token::LParen => 11,
        Token::RParen => 13,
        Token::Eq => 15,
        Token::Plus => 17,
        Token::Star => 19,
        Token::Var(i) => return BigUint::from(21u64) + BigUint::from(*i) * 2u64,
    };
    BigUint::from(small)
}

/// Inverse of [`symbol_code`]. Every odd number is some symbol's code, except
/// that variable indices beyond the machine word are reported as unknown.
pub fn token_for_code(c: &BigUint) -> Option<Token> {
    if c.is_zero() || (c % 2u64).is_zero() {
        return None;
    }
    let small = c.to_u64()?;
    Some(match small {
        1 => Token::Zero,
        3 => Token::Succ,
        5 => Token::Not,
        7 => Token::Or,
        9 => Token::All,
        11 => Token::LParen,
        13 => Token::RParen,
        15 => Token::Eq,
        17 => Token::Plus,
        19 => Token::Star,
        v => Token::Var((v - 21) / 2),
    })
}

#[derive(Debug, Clone, Error)]
pub enum CodecError {
    #[error("the empty sequence has no code")]
    EmptySequence,
    #[error("sequence elements must be at least 1")]
    ZeroElement,
    #[error("{0} is not a sequence code")]
    NotASequence(String),
    #[error("symbol code {0} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("token string does not form a formula: {0}")]
    NotAFormula(ParseError),
    #[error("index {i} is out of range for a sequence of length {len}")]
    GlIndex { i: u64, len: u64 },
    #[error("a proof line's code is too large to serve as an exponent")]
    LineCodeTooLarge,
    #[error("cannot read '{0}' as a number (decimal or factored p^e·p^e·…)")]
    Unparseable(String),
}

#[derive(Debug, Clone)]
enum Repr {
    Value(BigUint),
    Factored(Vec<BigUint>),
}

/// An arbitrary-precision natural, stored either as a plain value or, when
/// too large to hold, as the exponent vector of its `Π pᵢ^eᵢ` form.
///
/// Comparisons are exact in both representations and across them. Two
/// factored numbers are equal exactly when their exponent vectors agree
/// (unique factorization); distinct ones are ordered by comparing
/// `Σ eᵢ·log2(pᵢ)` at escalating precision until the rigorous error bound
/// separates them, which always terminates because the true difference is
/// nonzero. A value and a factored number are first separated by bit-length
/// bounds; when those overlap the factored side is small enough to
/// materialize, and the comparison finishes exactly.
#[derive(Debug, Clone)]
pub struct GoedelNumber {
    repr: Repr,
}

impl GoedelNumber {
    /// The number `Π prime(i)^exps[i]`. Trailing zero exponents are ignored;
    /// small products are materialized into plain values.
    pub fn from_exponents(mut exps: Vec<BigUint>) -> GoedelNumber {
        while exps.last().is_some_and(Zero::is_zero) {
            exps.pop();
        }
        if exps.is_empty() {
            return GoedelNumber::from(1u64);
        }
        if bits_upper_bound(&exps) <= MATERIALIZE_BIT_LIMIT {
            GoedelNumber {
                repr: Repr::Value(materialize(&exps)),
            }
        } else {
            GoedelNumber {
                repr: Repr::Factored(exps),
            }
        }
    }

    /// Exact value, when it fits the hard materialization cap.
    pub fn to_biguint(&self) -> Option<BigUint> {
        match &self.repr {
            Repr::Value(v) => Some(v.clone()),
            Repr::Factored(e) => {
                (bits_upper_bound(e) <= HARD_MATERIALIZE_CAP).then(|| materialize(e))
            }
        }
    }

    /// The exponent vector when the number is stored factored.
    pub fn exponents(&self) -> Option<&[BigUint]> {
        match &self.repr {
            Repr::Value(_) => None,
            Repr::Factored(e) => Some(e),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Value(v) if v.is_zero())
    }

    /// Decimal rendering, when the number is small enough to write out.
    pub fn to_decimal_string(&self) -> Option<String> {
        match &self.repr {
            Repr::Value(v) => Some(v.to_string()),
            Repr::Factored(_) => self.to_biguint().map(|v| v.to_string()),
        }
    }

    /// Rendering as `2^a·3^b·…`, when a full factorization is at hand or
    /// cheap to compute (small prime factors only).
    pub fn to_factored_string(&self) -> Option<String> {
        match &self.repr {
            Repr::Factored(e) => Some(factored_string(e)),
            Repr::Value(v) => {
                if v.is_zero() || v.is_one() {
                    return None;
                }
                let mut rest = v.clone();
                let mut exps = Vec::new();
                let mut i = 0;
                while !rest.is_one() {
                    if prime(i) > 1_000_000 {
                        return None;
                    }
                    exps.push(extract_exponent(&mut rest, prime(i)));
                    i += 1;
                }
                Some(factored_string(&exps))
            }
        }
    }
}

fn factored_string(exps: &[BigUint]) -> String {
    let terms: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| format!("{}^{}", prime(i), e))
        .collect();
    terms.join("·")
}

impl From<u64> for GoedelNumber {
    fn from(v: u64) -> Self {
        GoedelNumber {
            repr: Repr::Value(BigUint::from(v)),
        }
    }
}

impl From<BigUint> for GoedelNumber {
    fn from(v: BigUint) -> Self {
        GoedelNumber {
            repr: Repr::Value(v),
        }
    }
}

impl fmt::Display for GoedelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Value(v) => write!(f, "{v}"),
            Repr::Factored(e) => f.write_str(&factored_string(e)),
        }
    }
}

impl FromStr for GoedelNumber {
    type Err = CodecError;

    /// Accepts plain decimal (`143489070`) or a factored product of prime
    /// powers with strictly increasing prime bases (`2^5·3^11`, with `*` or
    /// `x` also accepted as the separator).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(CodecError::Unparseable(s.to_string()));
        }
        if !s.contains('^') {
            let v = BigUint::from_str(s).map_err(|_| CodecError::Unparseable(s.to_string()))?;
            return Ok(GoedelNumber::from(v));
        }
        let mut exps: Vec<BigUint> = Vec::new();
        let mut next_slot = 0usize;
        for part in s.split(['·', '*', 'x']) {
            let (base_s, exp_s) = part
                .trim()
                .split_once('^')
                .ok_or_else(|| CodecError::Unparseable(s.to_string()))?;
            let base: u64 = base_s
                .trim()
                .parse()
                .map_err(|_| CodecError::Unparseable(s.to_string()))?;
            let exp = BigUint::from_str(exp_s.trim())
                .map_err(|_| CodecError::Unparseable(s.to_string()))?;
            let slot = (next_slot..)
                .take_while(|&i| prime(i) <= base)
                .find(|&i| prime(i) == base)
                .ok_or_else(|| CodecError::Unparseable(s.to_string()))?;
            while exps.len() < slot {
                exps.push(BigUint::zero());
            }
            exps.push(exp);
            next_slot = slot + 1;
        }
        Ok(GoedelNumber::from_exponents(exps))
    }
}

impl Serialize for GoedelNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GoedelNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialEq for GoedelNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GoedelNumber {}

impl PartialOrd for GoedelNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoedelNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Value(a), Repr::Value(b)) => a.cmp(b),
            (Repr::Factored(a), Repr::Factored(b)) => cmp_factored(a, b),
            (Repr::Value(v), Repr::Factored(e)) => cmp_value_factored(v, e),
            (Repr::Factored(e), Repr::Value(v)) => cmp_value_factored(v, e).reverse(),
        }
    }
}

/// `Π prime(i)^exps[i]` computed exactly.
fn materialize(exps: &[BigUint]) -> BigUint {
    let mut acc = BigUint::one();
    for (i, e) in exps.iter().enumerate() {
        if !e.is_zero() {
            acc *= bigpow(prime(i), e);
        }
    }
    acc
}

fn bigpow(base: u64, exp: &BigUint) -> BigUint {
    let mut result = BigUint::one();
    let mut square = BigUint::from(base);
    let nbits = exp.bits();
    for i in 0..nbits {
        if exp.bit(i) {
            result *= &square;
        }
        if i + 1 < nbits {
            square = &square * &square;
        }
    }
    result
}

/// Cheap upper bound on the bit length of `Π prime(i)^exps[i]`, using
/// `log2(p) < bits(p)`. Saturates at `u64::MAX`.
fn bits_upper_bound(exps: &[BigUint]) -> u64 {
    let mut total = BigUint::zero();
    for (i, e) in exps.iter().enumerate() {
        total += e * BigUint::from(64 - prime(i).leading_zeros() as u64);
    }
    total.to_u64().unwrap_or(u64::MAX)
}

/// `log2(x)` in fixed point: returns `L` with `|L − 2^prec·log2(x)| ≤ 4`.
///
/// Computed by the classic square-and-extract loop on a mantissa wide enough
/// (`2·prec + 8` bits) that the truncation error, which doubles per
/// squaring, stays below one output unit.
fn log2_fixed(x: u64, prec: u64) -> BigUint {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), BigUint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(x, prec)) {
        return hit.clone();
    }

    let w = 2 * prec + 8;
    let int_part = 63 - x.leading_zeros() as u64;
    let mut m = BigUint::from(x) << ((w - int_part) as usize);
    let threshold: BigUint = BigUint::one() << ((w + 1) as usize);
    let mut result = BigUint::from(int_part) << (prec as usize);
    for j in (0..prec).rev() {
        m = (&m * &m) >> (w as usize);
        if m >= threshold {
            m >>= 1usize;
            result |= BigUint::one() << (j as usize);
        }
    }

    cache.lock().unwrap().insert((x, prec), result.clone());
    result
}

/// Exact order on factored numbers. Equal exponent vectors mean equal
/// numbers; otherwise the sign of `Σ dᵢ·log2(pᵢ)` (with `dᵢ` the exponent
/// differences) is pinned down at escalating precision. The loop terminates
/// for every pair of distinct numbers: the true difference is a fixed
/// nonzero real, and the error bound shrinks as `2^-prec`.
fn cmp_factored(a: &[BigUint], b: &[BigUint]) -> Ordering {
    let n = a.len().max(b.len());
    let zero = BigUint::zero();
    let diffs: Vec<BigInt> = (0..n)
        .map(|i| {
            BigInt::from(a.get(i).unwrap_or(&zero).clone())
                - BigInt::from(b.get(i).unwrap_or(&zero).clone())
        })
        .collect();
    let weight = diffs
        .iter()
        .fold(BigUint::zero(), |acc, d| acc + d.magnitude());
    if weight.is_zero() {
        return Ordering::Equal;
    }

    let mut prec = 64 + weight.bits();
    loop {
        let mut total = BigInt::zero();
        for (i, d) in diffs.iter().enumerate() {
            if !d.is_zero() {
                total += d * BigInt::from(log2_fixed(prime(i), prec));
            }
        }
        let err = BigInt::from(&weight * 4u64);
        if total > err {
            return Ordering::Greater;
        }
        if total < -err {
            return Ordering::Less;
        }
        prec *= 4;
    }
}

/// Bounds `2^prec·log2(Π prime(i)^exps[i])` from both sides.
fn factored_log2_bounds(exps: &[BigUint], prec: u64) -> (BigInt, BigInt) {
    let mut total = BigInt::zero();
    let mut weight = BigUint::zero();
    for (i, e) in exps.iter().enumerate() {
        if !e.is_zero() {
            total += BigInt::from(e.clone()) * BigInt::from(log2_fixed(prime(i), prec));
            weight += e;
        }
    }
    let err = BigInt::from(weight * 4u64);
    (&total - &err, total + err)
}

/// Compares a plain value with a factored number: separate by bit length
/// when possible, otherwise the two have nearly the same size and the
/// factored side can be materialized for an exact finish.
fn cmp_value_factored(v: &BigUint, exps: &[BigUint]) -> Ordering {
    if v.is_zero() || v.is_one() {
        // A factored repr is a nonempty product of primes, hence ≥ 2.
        return Ordering::Less;
    }
    let vbits = v.bits();
    for prec in [64u64, 256, 1024] {
        let (lo, hi) = factored_log2_bounds(exps, prec);
        // v < 2^vbits ≤ factored once vbits·2^prec ≤ lo.
        if BigInt::from(vbits) << (prec as usize) <= lo {
            return Ordering::Less;
        }
        // factored < 2^(vbits−1) ≤ v once hi < (vbits−1)·2^prec.
        if hi < BigInt::from(vbits - 1) << (prec as usize) {
            return Ordering::Greater;
        }
    }
    v.cmp(&materialize(exps))
}

/// `Π pᵢ^{items[i]}` for a nonempty list of naturals ≥ 1.
pub fn encode_seq(items: &[BigUint]) -> Result<GoedelNumber, CodecError> {
    if items.is_empty() {
        return Err(CodecError::EmptySequence);
    }
    if items.iter().any(Zero::is_zero) {
        return Err(CodecError::ZeroElement);
    }
    Ok(GoedelNumber::from_exponents(items.to_vec()))
}

/// Inverse of [`encode_seq`]: the exponent list, provided the prime support
/// of `x` is a gapless initial segment of the primes.
pub fn decode_seq(x: &GoedelNumber) -> Result<Vec<BigUint>, CodecError> {
    match &x.repr {
        Repr::Factored(exps) => {
            if exps.iter().any(Zero::is_zero) {
                Err(CodecError::NotASequence(x.to_string()))
            } else {
                Ok(exps.clone())
            }
        }
        Repr::Value(v) => {
            if v < &BigUint::from(2u64) {
                return Err(CodecError::NotASequence(x.to_string()));
            }
            let mut rest = v.clone();
            let mut out = Vec::new();
            let mut i = 0;
            while !rest.is_one() {
                let e = extract_exponent(&mut rest, prime(i));
                if e.is_zero() {
                    return Err(CodecError::NotASequence(x.to_string()));
                }
                out.push(e);
                i += 1;
            }
            Ok(out)
        }
    }
}

/// Divides out the full power of `p` from `n`, returning the exponent.
/// Binary lifting keeps this at `O(log exponent)` big divisions.
fn extract_exponent(n: &mut BigUint, p: u64) -> BigUint {
    let mut ladder = vec![BigUint::from(p)];
    while ladder.last().unwrap().bits() * 2 <= n.bits() + 1 {
        let top = ladder.last().unwrap();
        ladder.push(top * top);
    }
    let mut exp = BigUint::zero();
    for (k, pk) in ladder.iter().enumerate().rev() {
        loop {
            let (q, r) = n.div_rem(pk);
            if r.is_zero() {
                *n = q;
                exp += BigUint::one() << k;
            } else {
                break;
            }
        }
    }
    exp
}

/// Number of items in the sequence coded by `x`.
pub fn len_l(x: &GoedelNumber) -> Result<u64, CodecError> {
    decode_seq(x).map(|v| v.len() as u64)
}

/// The `i`-th item (1-based) of the sequence coded by `x`, i.e. the exponent
/// of the `i`-th prime.
pub fn gl(i: u64, x: &GoedelNumber) -> Result<BigUint, CodecError> {
    let seq = decode_seq(x)?;
    if i == 0 || i > seq.len() as u64 {
        return Err(CodecError::GlIndex {
            i,
            len: seq.len() as u64,
        });
    }
    Ok(seq[(i - 1) as usize].clone())
}

/// The code of a formula: `encode_seq` over the symbol codes of its printed
/// token string.
pub fn formula_code(f: &Formula) -> GoedelNumber {
    let codes: Vec<BigUint> = f.tokens().iter().map(symbol_code).collect();
    GoedelNumber::from_exponents(codes)
}

/// Inverse of [`formula_code`], total over all numbers with explicit errors.
pub fn decode_formula(x: &GoedelNumber) -> Result<Formula, CodecError> {
    let codes = decode_seq(x)?;
    let tokens: Vec<Token> = codes
        .iter()
        .map(|c| token_for_code(c).ok_or_else(|| CodecError::UnknownSymbol(c.to_string())))
        .collect::<Result<_, _>>()?;
    parse_tokens(&tokens).map_err(CodecError::NotAFormula)
}

/// Code of the negation of the formula coded by `y`; commutes with the
/// syntactic level: `neg_code(formula_code(φ)) = formula_code(negate(φ))`.
pub fn neg_code(y: &GoedelNumber) -> Result<GoedelNumber, CodecError> {
    let f = decode_formula(y)?;
    Ok(formula_code(&f.negate()))
}

/// Second-level code of a proof: `encode_seq` over the lines' formula codes.
pub fn proof_code(lines: &[Formula]) -> Result<GoedelNumber, CodecError> {
    if lines.is_empty() {
        return Err(CodecError::EmptySequence);
    }
    let exps: Vec<BigUint> = lines
        .iter()
        .map(|f| {
            formula_code(f)
                .to_biguint()
                .ok_or(CodecError::LineCodeTooLarge)
        })
        .collect::<Result<_, _>>()?;
    Ok(GoedelNumber::from_exponents(exps))
}

/// Decodes a second-level code back into its lines.
pub fn decode_proof(x: &GoedelNumber) -> Result<Vec<Formula>, CodecError> {
    decode_seq(x)?
        .iter()
        .map(|e| decode_formula(&GoedelNumber::from(e.clone())))
        .collect()
}
