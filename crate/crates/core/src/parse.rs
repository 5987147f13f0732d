//! Textual format for mixed polynomials.
//!
//! ```text
//! expr   := ('-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' exponent)? ('/' constant-factor)?
//! base   := 'u' | 'v' | 'conj(u)' | 'conj(v)' | 'i' | NAT | '(' expr ')'
//! exponent := NAT | 'n' | '(' integer arithmetic in NAT and 'n' ')'
//! ```
//!
//! Whitespace is insignificant and `#` starts a line comment. Division is
//! restricted to nonzero constant divisors. The optional parameter `n`
//! instantiates corpus templates; it is only legal when a binding is given.

use crate::gaussian::GaussianRational;
use crate::poly::{Exps, MixedPolynomial, Var};
use thiserror::Error;

/// An expression together with where it came from, for error reporting.
#[derive(Clone, Debug)]
pub struct SourceExpr {
    pub text: String,
    pub origin: String,
}

impl SourceExpr {
    pub fn inline(text: &str) -> Self {
        SourceExpr {
            text: text.to_string(),
            origin: "<inline>".to_string(),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("constant term must vanish for a germ (found {found})")]
    NonGerm { found: String },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("divisor at byte {pos} is not a constant")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at byte {pos}")]
    ZeroDivisor { pos: usize },
    #[error("parameter n used at byte {pos} but no value was supplied")]
    UnboundParameter { pos: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    U,
    V,
    ConjU,
    ConjV,
    I,
    N,
    Nat(u64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut val: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    val = val
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or(ParseError::Syntax {
                            pos: start,
                            expected: "a smaller integer".into(),
                        })?;
                    i += 1;
                }
                toks.push((Tok::Nat(val), start));
            }
            b'u' => {
                toks.push((Tok::U, i));
                i += 1;
            }
            b'v' => {
                toks.push((Tok::V, i));
                i += 1;
            }
            b'i' => {
                toks.push((Tok::I, i));
                i += 1;
            }
            b'n' => {
                toks.push((Tok::N, i));
                i += 1;
            }
            b'c' => {
                let start = i;
                // conj( u | v )
                if !src[i..].starts_with("conj") {
                    return Err(ParseError::Syntax {
                        pos: start,
                        expected: "'conj'".into(),
                    });
                }
                i += 4;
                while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                    i += 1;
                }
                if i >= bytes.len() || bytes[i] != b'(' {
                    return Err(ParseError::Syntax {
                        pos: i.min(bytes.len()),
                        expected: "'(' after conj".into(),
                    });
                }
                i += 1;
                while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                    i += 1;
                }
                let var = match bytes.get(i) {
                    Some(b'u') => Tok::ConjU,
                    Some(b'v') => Tok::ConjV,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: i.min(bytes.len()),
                            expected: "'u' or 'v' inside conj(..)".into(),
                        })
                    }
                };
                i += 1;
                while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                    i += 1;
                }
                if i >= bytes.len() || bytes[i] != b')' {
                    return Err(ParseError::Syntax {
                        pos: i.min(bytes.len()),
                        expected: "')' closing conj(..)".into(),
                    });
                }
                i += 1;
                toks.push((var, start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: "a token".into(),
                })
            }
        }
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

impl Lexer {
    fn peek(&self) -> (Tok, usize) {
        self.toks[self.idx]
    }
    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.idx];
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }
    fn eat(&mut self, t: Tok, what: &str) -> Result<usize, ParseError> {
        let (tok, pos) = self.peek();
        if tok == t {
            self.bump();
            Ok(pos)
        } else {
            Err(ParseError::Syntax {
                pos,
                expected: what.into(),
            })
        }
    }
}

struct Parser {
    lx: Lexer,
    n: Option<i64>,
}

impl Parser {
    fn expr(&mut self) -> Result<MixedPolynomial, ParseError> {
        let mut neg = false;
        if self.lx.peek().0 == Tok::Minus {
            self.lx.bump();
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.lx.peek().0 {
                Tok::Plus => {
                    self.lx.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.lx.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.lx.peek().0 == Tok::Star {
            self.lx.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MixedPolynomial, ParseError> {
        let mut p = self.base()?;
        if self.lx.peek().0 == Tok::Caret {
            self.lx.bump();
            let e = self.exponent()?;
            p = p.pow(e);
        }
        if self.lx.peek().0 == Tok::Slash {
            let (_, pos) = self.lx.bump();
            let mut d = self.base()?;
            if self.lx.peek().0 == Tok::Caret {
                self.lx.bump();
                let e = self.exponent()?;
                d = d.pow(e);
            }
            let c = constant_of(&d).ok_or(ParseError::NonConstantDivisor { pos })?;
            if c.is_zero() {
                return Err(ParseError::ZeroDivisor { pos });
            }
            p = p.scale(&c.inv());
        }
        Ok(p)
    }

    fn base(&mut self) -> Result<MixedPolynomial, ParseError> {
        let (tok, pos) = self.lx.bump();
        match tok {
            Tok::U => Ok(MixedPolynomial::var(Var::U)),
            Tok::V => Ok(MixedPolynomial::var(Var::V)),
            Tok::ConjU => Ok(MixedPolynomial::var(Var::UBar)),
            Tok::ConjV => Ok(MixedPolynomial::var(Var::VBar)),
            Tok::I => Ok(MixedPolynomial::constant(GaussianRational::i())),
            Tok::Nat(k) => Ok(MixedPolynomial::constant(GaussianRational::from_int(
                k as i64,
            ))),
            Tok::N => {
                let n = self.n.ok_or(ParseError::UnboundParameter { pos })?;
                if n < 0 {
                    return Err(ParseError::NegativeExponent { pos });
                }
                Ok(MixedPolynomial::constant(GaussianRational::from_int(n)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.lx.eat(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                pos,
                expected: "'u', 'v', 'conj(u)', 'conj(v)', 'i', a number, or '('".into(),
            }),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let (tok, pos) = self.lx.peek();
        let val = match tok {
            Tok::Nat(_) | Tok::N => self.int_atom()?,
            Tok::LParen => {
                self.lx.bump();
                let v = self.int_expr()?;
                self.lx.eat(Tok::RParen, "')'")?;
                v
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "an exponent".into(),
                })
            }
        };
        if val < 0 {
            return Err(ParseError::NegativeExponent { pos });
        }
        u32::try_from(val).map_err(|_| ParseError::Syntax {
            pos,
            expected: "a smaller exponent".into(),
        })
    }

    fn int_expr(&mut self) -> Result<i64, ParseError> {
        let mut neg = false;
        if self.lx.peek().0 == Tok::Minus {
            self.lx.bump();
            neg = true;
        }
        let mut acc = self.int_term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.lx.peek().0 {
                Tok::Plus => {
                    self.lx.bump();
                    acc += self.int_term()?;
                }
                Tok::Minus => {
                    self.lx.bump();
                    acc -= self.int_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int_term(&mut self) -> Result<i64, ParseError> {
        let mut acc = self.int_atom()?;
        while self.lx.peek().0 == Tok::Star {
            self.lx.bump();
            acc *= self.int_atom()?;
        }
        Ok(acc)
    }

    fn int_atom(&mut self) -> Result<i64, ParseError> {
        let (tok, pos) = self.lx.bump();
        match tok {
            Tok::Nat(k) => i64::try_from(k).map_err(|_| ParseError::Syntax {
                pos,
                expected: "a smaller integer".into(),
            }),
            Tok::N => self.n.ok_or(ParseError::UnboundParameter { pos }),
            Tok::LParen => {
                let v = self.int_expr()?;
                self.lx.eat(Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => Err(ParseError::Syntax {
                pos,
                expected: "an integer".into(),
            }),
        }
    }
}

fn constant_of(p: &MixedPolynomial) -> Option<GaussianRational> {
    if p.is_zero() {
        return Some(GaussianRational::zero());
    }
    if p.num_terms() == 1 {
        let (e, c) = p.terms().next().unwrap();
        if *e == Exps::zero() {
            return Some(c.clone());
        }
    }
    None
}

/// Parsing options.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Binding for the template parameter `n`.
    pub n: Option<i64>,
    /// Require the constant term to vanish (germ mode).
    pub germ: bool,
}

pub fn parse_with(src: &str, opts: ParseOptions) -> Result<MixedPolynomial, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser {
        lx: Lexer { toks, idx: 0 },
        n: opts.n,
    };
    let p = parser.expr()?;
    let (tok, pos) = parser.lx.peek();
    if tok != Tok::End {
        return Err(ParseError::Syntax {
            pos,
            expected: "end of input".into(),
        });
    }
    if opts.germ {
        let c = p.constant_term();
        if !c.is_zero() {
            return Err(ParseError::NonGerm {
                found: c.to_string(),
            });
        }
    }
    Ok(p)
}

/// Parses with default options (no `n` binding, no germ requirement).
pub fn parse(src: &str) -> Result<MixedPolynomial, ParseError> {
    parse_with(src, ParseOptions::default())
}

pub fn parse_source(src: &SourceExpr, opts: ParseOptions) -> Result<MixedPolynomial, ParseError> {
    parse_with(&src.text, opts)
}

fn format_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    let show = |name: &str, k: u32, parts: &mut Vec<String>| {
        if k == 1 {
            parts.push(name.to_string());
        } else if k > 1 {
            parts.push(format!("{}^{}", name, k));
        }
    };
    show("u", e.nu1, &mut parts);
    show("v", e.nu2, &mut parts);
    show("conj(u)", e.mu1, &mut parts);
    show("conj(v)", e.mu2, &mut parts);
    parts.join("*")
}

/// Canonical textual rendering; `parse(format_polynomial(p)) == p`.
pub fn format_polynomial(p: &MixedPolynomial) -> String {
    use num_traits::{Signed, Zero};
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().enumerate() {
        // pull out the sign when the coefficient is purely real or imaginary
        let (neg, mag) = if c.is_real() {
            (c.re.is_negative(), -c)
        } else if c.re.is_zero() {
            (c.im.is_negative(), -c)
        } else {
            (false, c.clone())
        };
        let coeff = if neg { mag } else { c.clone() };
        let mono = format_monomial(e);
        let body = if mono.is_empty() {
            coeff.to_string()
        } else if coeff == GaussianRational::one() {
            mono
        } else {
            format!("{}*{}", coeff, mono)
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_paper_examples() {
        let ex1 = parse("v*conj(v) - u*conj(u) + conj(v)*u^2").unwrap();
        assert_eq!(ex1.num_terms(), 3);
        // template instantiation
        let ex2a = parse_with(
            "u^10 + u^2*v + (v*conj(v))^n + conj(u)*v^(2*n-1)",
            ParseOptions {
                n: Some(2),
                germ: true,
            },
        )
        .unwrap();
        let ex2b = parse("u^10 + u^2*v + (v*conj(v))^2 + conj(u)*v^3").unwrap();
        assert_eq!(ex2a, ex2b);
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse("u - u").unwrap().is_zero());
    }

    #[test]
    fn germ_mode_rejects_constant() {
        let err = parse_with(
            "u + 1",
            ParseOptions {
                n: None,
                germ: true,
            },
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::NonGerm { .. }));
    }

    #[test]
    fn division_by_constants_only() {
        let p = parse("(v - conj(v))^8 / (2*i)").unwrap();
        assert_eq!(p.num_terms(), 9);
        assert!(matches!(
            parse("u / v").unwrap_err(),
            ParseError::NonConstantDivisor { .. }
        ));
        assert!(matches!(
            parse("u / 0").unwrap_err(),
            ParseError::ZeroDivisor { .. }
        ));
    }

    #[test]
    fn negative_exponent_rejected() {
        assert!(matches!(
            parse_with(
                "v^(n-3)",
                ParseOptions {
                    n: Some(1),
                    germ: false
                }
            )
            .unwrap_err(),
            ParseError::NegativeExponent { .. }
        ));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse("u + + v").unwrap_err() {
            ParseError::Syntax { pos, .. } => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse("u^2  # leading part\n + v # rest\n").unwrap();
        assert_eq!(p, parse("u^2+v").unwrap());
    }

    #[test]
    fn format_round_trip_examples() {
        for s in [
            "v*conj(v) - u*conj(u) + u^2*conj(v)",
            "u^10 + u^2*v + (v*conj(v))^2 + conj(u)*v^3",
            "(1/2+3*i)*u*v - conj(u)^2/7",
            "0",
            "i*v^3 - u",
        ] {
            let p = parse(s).unwrap();
            let rendered = format_polynomial(&p);
            let reparsed = parse(&rendered).unwrap();
            assert_eq!(p, reparsed, "round-trip failed for {s} -> {rendered}");
        }
    }

    fn arb_coeff() -> impl Strategy<Value = GaussianRational> {
        (-6i64..7, 1i64..5, -6i64..7, 1i64..5).prop_map(|(a, b, c, d)| {
            GaussianRational::new(
                num_rational::BigRational::new(a.into(), b.into()),
                num_rational::BigRational::new(c.into(), d.into()),
            )
        })
    }

    fn arb_poly() -> impl Strategy<Value = MixedPolynomial> {
        proptest::collection::vec(((0u32..4, 0u32..4, 0u32..4, 0u32..4), arb_coeff()), 0..6)
            .prop_map(|terms| {
                MixedPolynomial::from_terms(
                    terms
                        .into_iter()
                        .map(|((a, b, c, d), q)| (Exps::new(a, b, c, d), q)),
                )
            })
    }

    proptest! {
        #[test]
        fn parse_format_identity(p in arb_poly()) {
            let s = format_polynomial(&p);
            let q = parse(&s).unwrap();
            prop_assert_eq!(p, q);
        }
    }
}
