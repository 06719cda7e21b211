//! Tokenizer and recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := integer | integer '/' integer
//!         | variable ('^' natural)?
//!         | '(' expr ')' ('^' natural)?
//! ```
//!
//! Juxtaposition multiplies (`3y`, `xy`), and `^` binds tighter than it, so
//! `xy^2` is `x*y^2`. A run of letters that is not itself a variable is split
//! into variable names when possible. Over 𝔽_p literals reduce mod p.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::budget::Budget;
use crate::poly::{Polynomial, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownVariable(String),
    DivisionByZero,
}

/// Positioned parse failure; line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: tl, col: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(ParseError {
            line: tl,
            column: tc,
            message: format!("unexpected character `{c}`"),
            expected: vec![],
            kind: ParseErrorKind::Syntax,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Split an identifier run into variable names, preferring an exact match
/// and then longer names first.
fn split_identifier(s: &str, ctx: &VariableContext) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(vec![]);
    }
    if let Some(i) = ctx.index_of(s) {
        return Some(vec![i]);
    }
    let mut candidates: Vec<(usize, &String)> = ctx
        .names()
        .iter()
        .enumerate()
        .filter(|(_, n)| s.starts_with(n.as_str()))
        .collect();
    candidates.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
    for (i, n) in candidates {
        if let Some(mut rest) = split_identifier(&s[n.len()..], ctx) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ctx: &'a Arc<VariableContext>,
    budget: Budget,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            line: t.line,
            column: t.col,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            kind: ParseErrorKind::Syntax,
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek().clone();
        self.error_at(&t, format!("unexpected {}", t.tok.describe()), expected)
    }

    fn budget_error(&self, t: &Token, e: crate::Error) -> ParseError {
        self.error_at(t, e.to_string(), &[])
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.bump();
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let at = self.peek().clone();
            let f = self.factor()?;
            acc = acc
                .mul_budgeted(&f, &self.budget)
                .map_err(|e| self.budget_error(&at, e))?;
        }
    }

    fn exponent(&mut self) -> PResult<Option<u32>> {
        if self.peek().tok != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => match u32::try_from(n) {
                Ok(e) => Ok(Some(e)),
                Err(_) => Err(self.error_at(&t, format!("exponent {n} is too large"), &[])),
            },
            other => Err(self.error_at(&t, format!("unexpected {}", other.describe()), &["natural exponent"])),
        }
    }

    fn factor(&mut self) -> PResult<Polynomial> {
        let t = self.bump();
        match t.tok.clone() {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let dt = self.bump();
                    let d = match &dt.tok {
                        Tok::Int(d) => d.clone(),
                        other => {
                            return Err(self.error_at(
                                &dt,
                                format!("unexpected {}", other.describe()),
                                &["integer denominator"],
                            ))
                        }
                    };
                    let c = self.ctx.field().from_fraction(&n, &d).map_err(|_| ParseError {
                        line: dt.line,
                        column: dt.col,
                        message: format!("denominator {d} is zero in {}", self.ctx.field()),
                        expected: vec![],
                        kind: ParseErrorKind::DivisionByZero,
                    })?;
                    Ok(Polynomial::constant(self.ctx, c))
                } else {
                    Ok(Polynomial::constant(self.ctx, self.ctx.field().from_bigint(&n)))
                }
            }
            Tok::Ident(s) => {
                let vars = split_identifier(&s, self.ctx).ok_or_else(|| ParseError {
                    line: t.line,
                    column: t.col,
                    message: format!("unknown variable `{s}`"),
                    expected: self.ctx.names().to_vec(),
                    kind: ParseErrorKind::UnknownVariable(s.clone()),
                })?;
                let e = self.exponent()?.unwrap_or(1);
                let n = self.ctx.nvars();
                let mut exps = vec![0u32; n];
                let last = vars.len() - 1;
                for (k, &v) in vars.iter().enumerate() {
                    let add = if k == last { e } else { 1 };
                    exps[v] = exps[v]
                        .checked_add(add)
                        .ok_or_else(|| self.error_at(&t, "exponent overflow".into(), &[]))?;
                }
                Ok(Polynomial::monomial(self.ctx, &exps))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.peek().clone();
                if close.tok != Tok::RParen {
                    return Err(self.unexpected(&["`)`", "`+`", "`-`", "`*`"]));
                }
                self.bump();
                match self.exponent()? {
                    Some(e) => inner.pow(e, &self.budget).map_err(|err| self.budget_error(&close, err)),
                    None => Ok(inner),
                }
            }
            other => Err(self.error_at(
                &t,
                format!("unexpected {}", other.describe()),
                &["integer", "variable", "`(`"],
            )),
        }
    }
}

/// Parse `src` as a polynomial in `ctx`.
pub fn parse_polynomial(src: &str, ctx: &Arc<VariableContext>) -> Result<Polynomial, ParseError> {
    parse_polynomial_budgeted(src, ctx, &Budget::default())
}

pub fn parse_polynomial_budgeted(
    src: &str,
    ctx: &Arc<VariableContext>,
    budget: &Budget,
) -> Result<Polynomial, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        budget: *budget,
    };
    if p.peek().tok == Tok::Eof {
        return Err(p.unexpected(&["expression"]));
    }
    let out = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "end of input"]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::Monomial;
    use proptest::prelude::*;

    fn ctx(field: FieldSpec) -> Arc<VariableContext> {
        VariableContext::new(&["x", "y"], field).unwrap()
    }

    #[test]
    fn mixed_expression_over_q() {
        let c = ctx(FieldSpec::Rationals);
        let p = parse_polynomial("x^2*y + 3y - 1/2", &c).unwrap();
        let f = c.field();
        let expected = Polynomial::from_terms(
            &c,
            [
                (Monomial::from_exponents(&[2, 1]), f.one()),
                (Monomial::from_exponents(&[0, 1]), f.from_i64(3)),
                (Monomial::one(2), f.from_fraction(&(-1).into(), &2.into()).unwrap()),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x^2*y + 3*y - 1/2");
    }

    #[test]
    fn literals_reduce_mod_p() {
        let c = ctx(FieldSpec::prime(2).unwrap());
        let p = parse_polynomial("x^2 + 1", &c).unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_polynomial("2x + 4", &c).unwrap().is_zero());
        let c5 = ctx(FieldSpec::prime(5).unwrap());
        assert_eq!(
            parse_polynomial("1/2", &c5).unwrap().constant_term(),
            c5.field().from_i64(3)
        );
        let err = parse_polynomial("x/5", &c5).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        let err = parse_polynomial("1/5", &c5).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DivisionByZero);
        assert_eq!((err.line, err.column), (1, 3));
    }

    #[test]
    fn unknown_variable_is_positioned() {
        let c = ctx(FieldSpec::Rationals);
        let err = parse_polynomial("x + z", &c).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("z".into()));
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse_polynomial("x +\n  w2", &c).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }

    #[test]
    fn juxtaposition_and_precedence() {
        let c = ctx(FieldSpec::Rationals);
        let a = parse_polynomial("xy^2", &c).unwrap();
        assert_eq!(a, Polynomial::monomial(&c, &[1, 2]));
        let b = parse_polynomial("2(x + y)^2 - 2x^2", &c).unwrap();
        assert_eq!(b, parse_polynomial("4*x*y + 2*y^2", &c).unwrap());
        let neg = parse_polynomial("-(x - y)", &c).unwrap();
        assert_eq!(neg, parse_polynomial("y - x", &c).unwrap());
        assert_eq!(parse_polynomial("x^0", &c).unwrap(), Polynomial::one(&c));
    }

    #[test]
    fn multi_letter_names_split() {
        let c = VariableContext::new(&["a", "ab", "bc"], FieldSpec::Rationals).unwrap();
        assert_eq!(
            parse_polynomial("abc", &c).unwrap(),
            Polynomial::monomial(&c, &[1, 0, 1])
        );
        assert_eq!(
            parse_polynomial("ab", &c).unwrap(),
            Polynomial::monomial(&c, &[0, 1, 0])
        );
    }

    #[test]
    fn syntax_errors() {
        let c = ctx(FieldSpec::Rationals);
        for (src, col) in [
            ("", 1),
            ("x +", 4),
            ("(x", 3),
            ("x ^ y", 5),
            ("x $ y", 3),
            ("x^99999999999", 3),
            ("--x", 2),
        ] {
            let e = parse_polynomial(src, &c).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Syntax, "{src}");
            assert_eq!(e.column, col, "{src}: {e}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let c = VariableContext::new(&["x", "y", "z"], FieldSpec::Rationals).unwrap();
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), -9i64..9, 1i64..5), 0..6).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    &c,
                    ts.into_iter().map(|(e, n, d)| {
                        (
                            Monomial::from_exponents(&e),
                            c.field().from_fraction(&n.into(), &d.into()).unwrap(),
                        )
                    }),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(p in arb_poly()) {
            let back = parse_polynomial(&p.to_string(), p.ctx()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn parser_is_total(s in "[xyz0-9+*/^() -]{0,24}") {
            let c = VariableContext::new(&["x", "y"], FieldSpec::prime(3).unwrap()).unwrap();
            let tight = Budget { max_terms: 1000, ..Budget::default() };
            match parse_polynomial_budgeted(&s, &c, &tight) {
                Ok(_) => {}
                Err(e) => {
                    prop_assert!(e.line >= 1 && e.column >= 1);
                    prop_assert!(e.column <= s.chars().count() + 1);
                }
            }
        }
    }
}
