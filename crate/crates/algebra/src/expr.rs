//! Canonical text form for elements: a deterministic pretty-printer, a
//! recursive-descent parser with positioned errors, and an evaluator back
//! into exact [`Element`] values.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' nat)?
//! atom   := number | 'i' | ident | func | '(' expr ')'
//! number := nat ('/' nat)? 'i'?                  e.g. 2, 3/2, 1i, -7/4i (sign via unary)
//! ident  := 'P[' idx ']' | 'J[' idx ',' idx ']' | 'X[' idx ']' | 'XT[' idx ']'
//!         | 'a[' idx ']' | 'th[' idx ',' idx ']' | 'M2' | 'Minv2'
//! func   := 'comm(' expr ',' expr ')' | 'nf(' expr ')'
//! ```
//!
//! The printer emits each numerator term as
//! `scalar[*params…][*Minv2^k][*generators…]`, terms joined with ` + ` / ` - `,
//! words in PBW order — so `format → parse → evaluate` is the identity on
//! elements (exactly; see the round-trip tests).

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::bracket::BracketProvider;
use crate::element::Element;
use crate::gens::Gen;
use crate::params::{Monomial, ParamId, Poly};
use crate::scalar::{self, Rat, Scalar};

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

fn format_param(id: ParamId) -> String {
    match id {
        ParamId::A(mu) => format!("a[{mu}]"),
        ParamId::Th(mu, nu) => format!("th[{mu},{nu}]"),
    }
}

fn format_monomial(m: &Monomial) -> Vec<String> {
    m.factors()
        .iter()
        .map(|&(id, e)| {
            if e == 1 {
                format_param(id)
            } else {
                format!("{}^{}", format_param(id), e)
            }
        })
        .collect()
}

fn format_gen(g: Gen) -> String {
    match g {
        Gen::J { mu, nu } => format!("J[{mu},{nu}]"),
        Gen::P { mu } => format!("P[{mu}]"),
    }
}

/// One rendered numerator term plus its display sign (for ` - ` joining).
fn format_term(word: &[Gen], poly: &Poly, denom_pow: u32) -> (String, bool) {
    let mut parts: Vec<String> = Vec::new();
    let mut negative = false;
    if poly.len() == 1 {
        let (m, c) = poly.terms().next().expect("single term");
        let (mag, neg) = scalar::display_magnitude(c);
        negative = neg;
        parts.push(scalar::format_scalar(&mag));
        parts.extend(format_monomial(m));
    } else {
        // Multi-term coefficient: parenthesized subexpression, printed with
        // its own internal sign joining.
        let mut inner = String::new();
        for (idx, (m, c)) in poly.terms().enumerate() {
            let (mag, neg) = scalar::display_magnitude(c);
            let mut sub: Vec<String> = vec![scalar::format_scalar(&mag)];
            sub.extend(format_monomial(m));
            let rendered = sub.join("*");
            if idx == 0 {
                if neg {
                    inner.push('-');
                }
            } else if neg {
                inner.push_str(" - ");
            } else {
                inner.push_str(" + ");
            }
            inner.push_str(&rendered);
        }
        parts.push(format!("({inner})"));
    }
    if denom_pow > 0 {
        parts.push(format!("Minv2^{denom_pow}"));
    }
    parts.extend(word.iter().map(|&g| format_gen(g)));
    (parts.join("*"), negative)
}

/// Deterministic canonical rendering of an element.
pub fn format_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (word, poly)) in e.terms().enumerate() {
        let (rendered, negative) = format_term(word, poly, e.denom_pow());
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&rendered);
    }
    out
}

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Number { numer: BigInt, denom: BigInt, imaginary: bool },
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number { .. } => "number".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Parse failure with a 1-based byte position and the token set that would
/// have been accepted there.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: expected {expected}, found {found}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

/// Evaluation failure (valid syntax, impossible semantics) with position.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("evaluation error at byte {pos}: {message}")]
pub struct EvalError {
    pub pos: usize,
    pub message: String,
}

/// Either failure mode of [`eval_str`].
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            at: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    /// Next token plus its 1-based byte position.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let pos = self.at + 1;
        if self.at >= self.src.len() {
            return Ok((Tok::End, pos));
        }
        let b = self.src[self.at];
        let simple = match b {
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = simple {
            self.at += 1;
            return Ok((t, pos));
        }
        if b.is_ascii_digit() {
            let start = self.at;
            while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
                self.at += 1;
            }
            let numer = BigInt::parse_bytes(&self.src[start..self.at], 10)
                .expect("digit run parses");
            let mut denom = BigInt::from(1);
            if self.at < self.src.len() && self.src[self.at] == b'/' {
                self.at += 1;
                let dstart = self.at;
                while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
                    self.at += 1;
                }
                if dstart == self.at {
                    return Err(ParseError {
                        pos: self.at + 1,
                        expected: "digits after '/'".into(),
                        found: self.describe_at(self.at),
                    });
                }
                denom = BigInt::parse_bytes(&self.src[dstart..self.at], 10)
                    .expect("digit run parses");
                if denom.is_zero() {
                    return Err(ParseError {
                        pos: dstart + 1,
                        expected: "nonzero denominator".into(),
                        found: "0".into(),
                    });
                }
            }
            let mut imaginary = false;
            if self.at < self.src.len() && self.src[self.at] == b'i' {
                imaginary = true;
                self.at += 1;
            }
            return Ok((Tok::Number { numer, denom, imaginary }, pos));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let start = self.at;
            while self.at < self.src.len()
                && (self.src[self.at].is_ascii_alphanumeric() || self.src[self.at] == b'_')
            {
                self.at += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.at])
                .expect("ascii alnum is utf8")
                .to_string();
            return Ok((Tok::Ident(name), pos));
        }
        Err(ParseError {
            pos,
            expected: "number, identifier, or one of '[ ] ( ) , + - * ^'".into(),
            found: self.describe_at(self.at),
        })
    }

    fn describe_at(&self, at: usize) -> String {
        if at >= self.src.len() {
            "end of input".into()
        } else {
            // Report the full UTF-8 character for non-ASCII bytes.
            let tail = std::str::from_utf8(&self.src[at..])
                .map(|s| s.chars().next())
                .ok()
                .flatten();
            match tail {
                Some(c) => format!("'{c}'"),
                None => format!("byte 0x{:02x}", self.src[at]),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Ast {
    Num(Scalar),
    ImagUnit,
    P(usize, u8),
    J(usize, u8, u8),
    X(usize, u8),
    XTheta(usize, u8),
    AParam(usize, u8),
    ThParam(usize, u8, u8),
    MassSquared,
    MassInverseSquared,
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(usize, Box<Ast>, u32),
    Comm(Box<Ast>, Box<Ast>),
    NormalForm(Box<Ast>),
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, pos) = lexer.next()?;
        Ok(Parser { lexer, tok, pos })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.lexer.next()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            expected: expected.into(),
            found: self.tok.describe(),
        }
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<(), ParseError> {
        if &self.tok == want {
            self.advance()
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn parse_index(&mut self) -> Result<u8, ParseError> {
        match self.tok.clone() {
            Tok::Number { numer, denom, imaginary }
                if !imaginary && denom == BigInt::from(1) =>
            {
                let idx: u8 = numer.try_into().map_err(|_| ParseError {
                    pos: self.pos,
                    expected: "index in 0..=255".into(),
                    found: "larger number".into(),
                })?;
                self.advance()?;
                Ok(idx)
            }
            _ => Err(self.unexpected("generator index (small nonnegative integer)")),
        }
    }

    fn parse_bracketed_indices(&mut self, count: usize) -> Result<Vec<u8>, ParseError> {
        self.expect(&Tok::LBracket, "'['")?;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            if k > 0 {
                self.expect(&Tok::Comma, "','")?;
            }
            out.push(self.parse_index()?);
        }
        self.expect(&Tok::RBracket, "']'")?;
        Ok(out)
    }

    fn parse_expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    let rhs = self.parse_term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.advance()?;
                    let rhs = self.parse_term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.tok == Tok::Star {
            self.advance()?;
            let rhs = self.parse_unary()?;
            lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Ast, ParseError> {
        if self.tok == Tok::Minus {
            self.advance()?;
            let inner = self.parse_unary()?;
            Ok(Ast::Neg(Box::new(inner)))
        } else {
            self.parse_factor()
        }
    }

    fn parse_factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.parse_atom()?;
        if self.tok == Tok::Caret {
            let caret_pos = self.pos;
            self.advance()?;
            match self.tok.clone() {
                Tok::Number { numer, denom, imaginary }
                    if !imaginary && denom == BigInt::from(1) =>
                {
                    let exp: u32 = numer.try_into().map_err(|_| ParseError {
                        pos: self.pos,
                        expected: "exponent in 0..=4294967295".into(),
                        found: "larger number".into(),
                    })?;
                    self.advance()?;
                    Ok(Ast::Pow(caret_pos, Box::new(base), exp))
                }
                _ => Err(self.unexpected("nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos;
        match self.tok.clone() {
            Tok::Number { numer, denom, imaginary } => {
                self.advance()?;
                let q = Rat::new(numer, denom);
                let s = if imaginary {
                    Scalar::new(Rat::zero(), q)
                } else {
                    Scalar::new(q, Rat::zero())
                };
                Ok(Ast::Num(s))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.advance()?;
                match name.as_str() {
                    "i" => Ok(Ast::ImagUnit),
                    "M2" => Ok(Ast::MassSquared),
                    "Minv2" => Ok(Ast::MassInverseSquared),
                    "P" => {
                        let idx = self.parse_bracketed_indices(1)?;
                        Ok(Ast::P(pos, idx[0]))
                    }
                    "X" => {
                        let idx = self.parse_bracketed_indices(1)?;
                        Ok(Ast::X(pos, idx[0]))
                    }
                    "XT" => {
                        let idx = self.parse_bracketed_indices(1)?;
                        Ok(Ast::XTheta(pos, idx[0]))
                    }
                    "a" => {
                        let idx = self.parse_bracketed_indices(1)?;
                        Ok(Ast::AParam(pos, idx[0]))
                    }
                    "J" => {
                        let idx = self.parse_bracketed_indices(2)?;
                        Ok(Ast::J(pos, idx[0], idx[1]))
                    }
                    "th" => {
                        let idx = self.parse_bracketed_indices(2)?;
                        Ok(Ast::ThParam(pos, idx[0], idx[1]))
                    }
                    "comm" => {
                        self.expect(&Tok::LParen, "'('")?;
                        let a = self.parse_expr()?;
                        self.expect(&Tok::Comma, "','")?;
                        let b = self.parse_expr()?;
                        self.expect(&Tok::RParen, "')'")?;
                        Ok(Ast::Comm(Box::new(a), Box::new(b)))
                    }
                    "nf" => {
                        self.expect(&Tok::LParen, "'('")?;
                        let a = self.parse_expr()?;
                        self.expect(&Tok::RParen, "')'")?;
                        Ok(Ast::NormalForm(Box::new(a)))
                    }
                    _ => Err(ParseError {
                        pos,
                        expected:
                            "one of P, J, X, XT, M2, Minv2, a, th, i, comm, nf".into(),
                        found: format!("identifier '{name}'"),
                    }),
                }
            }
            _ => Err(self.unexpected("number, identifier, '-', or '('")),
        }
    }
}

/// Parses a complete expression (whole input must be consumed).
fn parse(src: &str) -> Result<Ast, ParseError> {
    let mut p = Parser::new(src)?;
    let ast = p.parse_expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected("'+', '-', '*', '^', or end of input"));
    }
    Ok(ast)
}

/// Maximum exponent accepted by the evaluator (keeps word degree bounded).
const MAX_EXPONENT: u32 = 32;

fn eval(ast: &Ast, d: u8, provider: &dyn BracketProvider) -> Result<Element, EvalError> {
    let check_idx = |pos: usize, mu: u8| -> Result<(), EvalError> {
        if mu >= d {
            Err(EvalError {
                pos,
                message: format!("index {mu} out of range for dimension {d}"),
            })
        } else {
            Ok(())
        }
    };
    match ast {
        Ast::Num(s) => Ok(Element::scalar(s.clone())),
        Ast::ImagUnit => Ok(Element::scalar(scalar::imag(1))),
        Ast::P(pos, mu) => {
            check_idx(*pos, *mu)?;
            Ok(crate::ops::p(*mu))
        }
        Ast::J(pos, mu, nu) => {
            check_idx(*pos, *mu)?;
            check_idx(*pos, *nu)?;
            Ok(crate::ops::j(*mu, *nu))
        }
        Ast::X(pos, mu) => {
            check_idx(*pos, *mu)?;
            Ok(crate::ops::x(*mu, d, provider))
        }
        Ast::XTheta(pos, mu) => {
            check_idx(*pos, *mu)?;
            Ok(crate::ops::x_theta(*mu, d, provider))
        }
        Ast::AParam(pos, mu) => {
            check_idx(*pos, *mu)?;
            Ok(Element::from_poly(crate::ops::a_param(*mu)))
        }
        Ast::ThParam(pos, mu, nu) => {
            check_idx(*pos, *mu)?;
            check_idx(*pos, *nu)?;
            Ok(Element::from_poly(crate::ops::theta_param(*mu, *nu)))
        }
        Ast::MassSquared => Ok(crate::ops::m2(d)),
        Ast::MassInverseSquared => Ok(Element::one().over_m2(1)),
        Ast::Neg(inner) => Ok(eval(inner, d, provider)?.neg()),
        Ast::Add(a, b) => Ok(eval(a, d, provider)?.add(&eval(b, d, provider)?, d)),
        Ast::Sub(a, b) => Ok(eval(a, d, provider)?.sub(&eval(b, d, provider)?, d)),
        Ast::Mul(a, b) => Ok(eval(a, d, provider)?.mul(&eval(b, d, provider)?, provider, d)),
        Ast::Pow(pos, base, exp) => {
            if *exp > MAX_EXPONENT {
                return Err(EvalError {
                    pos: *pos,
                    message: format!("exponent {exp} exceeds the supported maximum {MAX_EXPONENT}"),
                });
            }
            let b = eval(base, d, provider)?;
            let mut out = Element::one();
            for _ in 0..*exp {
                out = out.mul(&b, provider, d);
            }
            Ok(out)
        }
        Ast::Comm(a, b) => {
            Ok(eval(a, d, provider)?.commutator(&eval(b, d, provider)?, provider, d))
        }
        // Elements are kept normal-formed throughout; the explicit request
        // additionally lowers the denominator where the numerator divides.
        Ast::NormalForm(a) => Ok(eval(a, d, provider)?.reduce_denominator(d)),
    }
}

/// Parses and evaluates `src` in dimension `d`.
pub fn eval_str(src: &str, d: u8, provider: &dyn BracketProvider) -> Result<Element, ExprError> {
    let ast = parse(src)?;
    Ok(eval(&ast, d, provider)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::Poincare;

    const D: u8 = 4;

    fn ev(src: &str) -> Element {
        eval_str(src, D, &Poincare).expect("valid expression")
    }

    #[test]
    fn formats_and_reparses_position_commutator() {
        let comm = ev("nf(comm(X[1],X[2]))");
        let text = format_element(&comm);
        assert_eq!(text, "-1i*Minv2^1*J[1,2]");
        let back = ev(&text);
        assert!(back.equals(&comm, D));
    }

    #[test]
    fn momenta_commute_to_zero_text() {
        assert_eq!(format_element(&ev("comm(P[0],P[3])")), "0");
    }

    #[test]
    fn parses_rationals_and_imaginary_literals() {
        let e = ev("3/2i*P[0] - 2*P[1]");
        let text = format_element(&e);
        assert_eq!(text, "3/2i*P[0] - 2*P[1]");
        assert!(ev(&text).equals(&e, D));
    }

    #[test]
    fn parse_error_positions_are_one_based_bytes() {
        let err = eval_str("P[4", D, &Poincare).unwrap_err();
        match err {
            ExprError::Parse(p) => assert_eq!(p.pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        let err = eval_str("comm(P[0] P[1])", D, &Poincare).unwrap_err();
        match err {
            ExprError::Parse(p) => {
                assert_eq!(p.pos, 11);
                assert!(p.expected.contains("','"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn eval_error_for_out_of_range_index() {
        let err = eval_str("P[7]", D, &Poincare).unwrap_err();
        match err {
            ExprError::Eval(e) => {
                assert_eq!(e.pos, 1);
                assert!(e.message.contains("out of range"));
            }
            other => panic!("expected eval error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_is_positioned() {
        let err = eval_str("Q[1]", D, &Poincare).unwrap_err();
        match err {
            ExprError::Parse(p) => {
                assert_eq!(p.pos, 1);
                assert!(p.found.contains('Q'));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn power_and_parentheses_evaluate() {
        let e = ev("(P[1] + P[2])^2");
        let direct = ev("P[1]*P[1] + 2*P[1]*P[2] + P[2]*P[2]");
        assert!(e.equals(&direct, D));
    }

    #[test]
    fn minv2_powers_cross_multiply() {
        let e = ev("Minv2^2*M2*M2");
        assert!(e.equals(&Element::one(), D));
    }

    #[test]
    fn zero_formats_and_round_trips() {
        let z = ev("0");
        assert!(z.is_zero());
        assert_eq!(format_element(&z), "0");
        assert!(ev("0").equals(&Element::zero(), D));
    }
}
