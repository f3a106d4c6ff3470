//! Text grammar for polynomials and the canonical printer.
//!
//! ```text
//! poly  := ['-'] term (('+'|'-') term)*
//! term  := coeff ['*'] atom* | atom+        (atoms may be joined by '*')
//! atom  := ident ['^' nat]
//! coeff := nat | nat '/' nat | decimal
//! ```
//!
//! Whitespace is ignored. Parameters are only accepted by symbolic domains.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::domain::{
    CoefficientDomain, FloatDomain, MultiPoly, Rational, RationalField, SymbolicDomain,
};
use crate::poly::Polynomial;

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownIdentifier(String),
    ZeroDenominator,
    ParameterNotAllowed(String),
    NonIntegerCoefficient,
    ExponentTooLarge,
    InvalidSource(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier {id:?}"),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::ParameterNotAllowed(id) => {
                write!(f, "parameter {id:?} is only allowed in symbolic mode")
            }
            ParseErrorKind::NonIntegerCoefficient => {
                f.write_str("symbolic mode needs integer coefficients")
            }
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
            ParseErrorKind::InvalidSource(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ParseError {}

/// Input text plus the names it may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySource {
    pub text: String,
    pub main_var: String,
    pub parameters: Vec<String>,
}

impl PolySource {
    pub fn new(text: impl Into<String>) -> Self {
        PolySource {
            text: text.into(),
            main_var: "x".into(),
            parameters: Vec::new(),
        }
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.main_var = var.into();
        self
    }

    pub fn with_params<S: Into<String>>(mut self, params: impl IntoIterator<Item = S>) -> Self {
        self.parameters = params.into_iter().map(Into::into).collect();
        self
    }

    fn validate(&self) -> Result<(), ParseError> {
        let bad = |msg: String| ParseError {
            position: 0,
            kind: ParseErrorKind::InvalidSource(msg),
        };
        for id in std::iter::once(&self.main_var).chain(&self.parameters) {
            if !is_identifier(id) {
                return Err(bad(format!("invalid identifier {id:?}")));
            }
        }
        if self.parameters.contains(&self.main_var) {
            return Err(bad(format!(
                "main variable {:?} is also a parameter",
                self.main_var
            )));
        }
        Ok(())
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// A coefficient literal, kept both exactly and as the nearest double.
#[derive(Debug, Clone, PartialEq)]
pub struct Literal {
    pub exact: BigRational,
    pub float: f64,
}

/// Domains the parser can produce and the printer can render.
pub trait ParseTarget: CoefficientDomain {
    /// Parameter names, for symbolic domains.
    fn parameters(&self) -> &[String] {
        &[]
    }

    /// `lit · Π params^exps`; `exps` is all zero for non-symbolic domains.
    fn term(&self, lit: &Literal, exps: &[u32]) -> Result<Self::Elem, ParseErrorKind>;

    /// Signed pieces of `c · var_part`, each without its sign.
    fn render(&self, c: &Self::Elem, var_part: Option<&str>) -> Vec<(bool, String)>;
}

fn attach(coeff: String, unit: bool, joiner: &str, var_part: Option<&str>) -> String {
    match var_part {
        None => coeff,
        Some(v) if unit => v.to_string(),
        Some(v) => format!("{coeff}{joiner}{v}"),
    }
}

impl ParseTarget for RationalField {
    fn term(&self, lit: &Literal, _exps: &[u32]) -> Result<Rational, ParseErrorKind> {
        Ok(Rational::from_big(lit.exact.clone()))
    }

    fn render(&self, c: &Rational, var_part: Option<&str>) -> Vec<(bool, String)> {
        let mag = c.as_big().abs();
        let joiner = if mag.is_integer() { "" } else { " " };
        let text = attach(
            Rational::from_big(mag.clone()).to_string(),
            mag.is_one(),
            joiner,
            var_part,
        );
        vec![(c.is_negative(), text)]
    }
}

impl ParseTarget for FloatDomain {
    fn term(&self, lit: &Literal, _exps: &[u32]) -> Result<f64, ParseErrorKind> {
        Ok(lit.float)
    }

    fn render(&self, c: &f64, var_part: Option<&str>) -> Vec<(bool, String)> {
        let mag = c.abs();
        vec![(
            c.is_sign_negative() && *c != 0.0,
            attach(mag.to_string(), mag == 1.0, "", var_part),
        )]
    }
}

impl ParseTarget for SymbolicDomain {
    fn parameters(&self) -> &[String] {
        self.params()
    }

    fn term(&self, lit: &Literal, exps: &[u32]) -> Result<MultiPoly, ParseErrorKind> {
        if !lit.exact.is_integer() {
            return Err(ParseErrorKind::NonIntegerCoefficient);
        }
        Ok(MultiPoly::monomial(
            self.params().clone(),
            lit.exact.to_integer(),
            exps.to_vec(),
        ))
    }

    fn render(&self, c: &MultiPoly, var_part: Option<&str>) -> Vec<(bool, String)> {
        c.signed_terms()
            .into_iter()
            .map(|(neg, body)| (neg, attach(body.clone(), body == "1", "*", var_part)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(String),
    Decimal(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Decimal(text[start..i].to_string())
            } else {
                Tok::Nat(text[start..i].to_string())
            }
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or(c);
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnexpectedChar(ch),
                    });
                }
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct RawTerm {
    negative: bool,
    coeff: Literal,
    x_exp: u32,
    params: Vec<u32>,
    position: usize,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    src: &'a PolySource,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            kind,
        })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.toks.get(self.pos) {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some((_, tok)) => {
                let c = match tok {
                    Tok::Nat(s) | Tok::Decimal(s) | Tok::Ident(s) => {
                        s.chars().next().unwrap_or('?')
                    }
                    Tok::Plus => '+',
                    Tok::Minus => '-',
                    Tok::Star => '*',
                    Tok::Slash => '/',
                    Tok::Caret => '^',
                };
                self.err(ParseErrorKind::UnexpectedChar(c))
            }
        }
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            negative = true;
            self.pos += 1;
        }
        terms.push(self.term(negative)?);
        while let Some(tok) = self.peek() {
            negative = match tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return self.unexpected(),
            };
            self.pos += 1;
            terms.push(self.term(negative)?);
        }
        Ok(terms)
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Nat(s)) => {
                let v = s.parse().expect("lexer yields digits");
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(ParseErrorKind::Expected("natural number")),
        }
    }

    fn coeff(&mut self) -> Result<Option<Literal>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Nat(s)) => {
                let num: BigInt = self.nat()?;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let den_pos = self.offset();
                    let den_tok = match self.peek() {
                        Some(Tok::Nat(d)) => d.clone(),
                        _ => return self.err(ParseErrorKind::Expected("denominator")),
                    };
                    let den = self.nat()?;
                    if den.is_zero() {
                        return Err(ParseError {
                            position: den_pos,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    let float = s.parse::<f64>().unwrap_or(f64::NAN)
                        / den_tok.parse::<f64>().unwrap_or(f64::NAN);
                    Ok(Some(Literal {
                        exact: BigRational::new(num, den),
                        float,
                    }))
                } else {
                    Ok(Some(Literal {
                        float: num.to_f64().unwrap_or(f64::INFINITY),
                        exact: BigRational::from_integer(num),
                    }))
                }
            }
            Some(Tok::Decimal(s)) => {
                self.pos += 1;
                let (int, frac) = s.split_once('.').expect("lexer yields a point");
                let digits: BigInt = format!("{int}{frac}").parse().expect("digits");
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                Ok(Some(Literal {
                    exact: BigRational::new(digits, scale),
                    float: s.parse().expect("decimal literal"),
                }))
            }
            _ => Ok(None),
        }
    }

    /// Resolve an identifier into (x exponent, parameter exponents).
    fn resolve(&self, id: &str, pos: usize) -> Result<Vec<(Option<usize>, usize)>, ParseError> {
        let lookup = |name: &str| -> Option<Option<usize>> {
            if name == self.src.main_var {
                Some(None)
            } else {
                self.src.parameters.iter().position(|p| p == name).map(Some)
            }
        };
        if let Some(slot) = lookup(id) {
            return Ok(vec![(slot, pos)]);
        }
        // juxtaposed single-letter names, e.g. "ab" for a·b
        let split: Option<Vec<_>> = id
            .char_indices()
            .map(|(i, c)| lookup(&c.to_string()).map(|s| (s, pos + i)))
            .collect();
        match split {
            Some(parts) if id.chars().all(|c| c.is_ascii_alphabetic()) => Ok(parts),
            _ => Err(ParseError {
                position: pos,
                kind: ParseErrorKind::UnknownIdentifier(id.to_string()),
            }),
        }
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm, ParseError> {
        let position = self.offset();
        let coeff = self.coeff()?;
        let has_coeff = coeff.is_some();
        let mut x_exp = 0u32;
        let mut params = vec![0u32; self.src.parameters.len()];
        let mut atoms = 0usize;
        loop {
            let star = self.peek() == Some(&Tok::Star);
            if star {
                if !has_coeff && atoms == 0 {
                    return self.unexpected();
                }
                self.pos += 1;
            }
            let (id, pos) = match self.toks.get(self.pos) {
                Some((p, Tok::Ident(id))) => (id.clone(), *p),
                _ if star => return self.err(ParseErrorKind::Expected("identifier")),
                _ => break,
            };
            self.pos += 1;
            let mut exp = 1u32;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let e = self.nat()?;
                exp = match e.to_u32() {
                    Some(e) if e <= MAX_EXPONENT => e,
                    _ => return self.err(ParseErrorKind::ExponentTooLarge),
                };
            }
            let parts = self.resolve(&id, pos)?;
            let last = parts.len() - 1;
            for (i, (slot, _)) in parts.into_iter().enumerate() {
                // a trailing exponent binds to the last letter only
                let e = if i == last { exp } else { 1 };
                let target = match slot {
                    None => &mut x_exp,
                    Some(k) => &mut params[k],
                };
                *target = target.saturating_add(e);
                if *target > MAX_EXPONENT {
                    return self.err(ParseErrorKind::ExponentTooLarge);
                }
            }
            atoms += 1;
        }
        if !has_coeff && atoms == 0 {
            return self.err(ParseErrorKind::Expected("term"));
        }
        Ok(RawTerm {
            negative,
            coeff: coeff.unwrap_or(Literal {
                exact: BigRational::one(),
                float: 1.0,
            }),
            x_exp,
            params,
            position,
        })
    }
}

/// Parse into a dense ascending coefficient list over `dom`, combining like
/// terms.
pub fn parse_poly<D: ParseTarget>(
    src: &PolySource,
    dom: &D,
) -> Result<Polynomial<D::Elem>, ParseError> {
    src.validate()?;
    let dom_params = dom.parameters();
    if !dom_params.is_empty() && dom_params != src.parameters.as_slice() {
        return Err(ParseError {
            position: 0,
            kind: ParseErrorKind::InvalidSource("parameter list differs from the domain's".into()),
        });
    }
    let symbolic = !dom_params.is_empty();
    let toks = lex(&src.text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: src.text.len(),
        src,
    };
    if parser.toks.is_empty() {
        return parser.err(ParseErrorKind::UnexpectedEnd);
    }
    let terms = parser.poly()?;
    let degree = terms.iter().map(|t| t.x_exp as usize).max().unwrap_or(0);
    let mut coeffs = vec![dom.zero(); degree + 1];
    for t in terms {
        if !symbolic {
            if let Some(k) = t.params.iter().position(|&e| e > 0) {
                return Err(ParseError {
                    position: t.position,
                    kind: ParseErrorKind::ParameterNotAllowed(src.parameters[k].clone()),
                });
            }
        }
        let mut value = dom.term(&t.coeff, &t.params).map_err(|kind| ParseError {
            position: t.position,
            kind,
        })?;
        if t.negative {
            value = dom.neg(&value);
        }
        let slot = &mut coeffs[t.x_exp as usize];
        *slot = dom.add(slot, &value);
    }
    Ok(Polynomial::new(coeffs))
}

/// Canonical descending-power text, e.g. `x^3 + 3x^2 + x + 3`.
pub fn format_poly<D: ParseTarget>(dom: &D, p: &Polynomial<D::Elem>, main_var: &str) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if dom.is_zero(c) {
            continue;
        }
        let var = match k {
            0 => None,
            1 => Some(main_var.to_string()),
            _ => Some(format!("{main_var}^{k}")),
        };
        pieces.extend(dom.render(c, var.as_deref()));
    }
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}
