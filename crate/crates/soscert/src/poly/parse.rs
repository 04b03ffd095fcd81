//! Recursive-descent parser for the polynomial text grammar.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := rational ['*' factors] | factors
//! factors    := factor ('*' factor)*
//! factor     := variable ['^' positive-integer]
//!             | '(' expression ')' ['^' positive-integer]
//! rational   := integer ['/' positive-integer]
//! ```
//!
//! A rational immediately followed by a factor (as in `2x`) is also accepted,
//! mirroring the optional `*` after a leading coefficient.

use super::{Exponent, Polynomial, VarSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Parse failure with a byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

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
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Int(text.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    vars: &'a VarSet,
    end: usize,
}

/// Parses `text` over the given ordered variable context.
pub fn parse(text: &str, vars: &VarSet) -> Result<Polynomial, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        vars,
        end: text.len(),
    };
    let poly = p.expression()?;
    if let Some((pos, _)) = p.peek() {
        return Err(ParseError {
            position: pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.toks.get(self.idx).map(|(p, t)| (*p, t))
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        self.idx += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.end)
    }

    fn expression(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Minus => {
                    self.bump();
                    negate = true;
                }
                _ => {}
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some((_, tok)) = self.peek() {
            match tok {
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
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc;
        match self.peek() {
            Some((_, Tok::Int(_))) => {
                let c = self.rational()?;
                acc = Polynomial::constant(self.vars.clone(), c);
                // optional '*' (or juxtaposed factor) after a leading coefficient
                match self.peek() {
                    Some((_, Tok::Star)) => {
                        self.bump();
                        let f = self.factor()?;
                        acc = &acc * &f;
                    }
                    Some((_, Tok::Ident(_))) | Some((_, Tok::LParen)) => {
                        let f = self.factor()?;
                        acc = &acc * &f;
                    }
                    _ => return Ok(acc),
                }
            }
            _ => {
                acc = self.factor()?;
            }
        }
        while let Some((_, Tok::Star)) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let (pos, tok) = self.bump().unwrap();
        let numer = match tok {
            Tok::Int(n) => n,
            _ => {
                return Err(ParseError {
                    position: pos,
                    message: "expected integer".into(),
                })
            }
        };
        if let Some((_, Tok::Slash)) = self.peek() {
            self.bump();
            let dpos = self.here();
            match self.bump() {
                Some((_, Tok::Int(d))) => {
                    if d.is_zero() {
                        return Err(ParseError {
                            position: dpos,
                            message: "denominator must be positive".into(),
                        });
                    }
                    Ok(BigRational::new(numer, d))
                }
                _ => Err(ParseError {
                    position: dpos,
                    message: "expected denominator after `/`".into(),
                }),
            }
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let (pos, tok) = match self.bump() {
            Some(t) => t,
            None => {
                return Err(ParseError {
                    position: self.end,
                    message: "expected factor, found end of input".into(),
                })
            }
        };
        let base = match tok {
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => {
                    let mut e = Exponent::zeros(self.vars.len());
                    e.0[i] = 1;
                    Polynomial::from_terms(self.vars.clone(), [(e, BigRational::one())])
                }
                None => {
                    return Err(ParseError {
                        position: pos,
                        message: format!("unknown variable `{}`", name),
                    })
                }
            },
            Tok::LParen => {
                let inner = self.expression()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => inner,
                    Some((p, _)) => {
                        return Err(ParseError {
                            position: p,
                            message: "expected `)`".into(),
                        })
                    }
                    None => {
                        return Err(ParseError {
                            position: self.end,
                            message: "unclosed parenthesis".into(),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError {
                    position: pos,
                    message: "expected variable or parenthesized expression".into(),
                })
            }
        };
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            let epos = self.here();
            match self.bump() {
                Some((_, Tok::Int(k))) => {
                    // a following '/' would make the exponent a non-integer rational
                    if let Some((spos, Tok::Slash)) = self.peek() {
                        return Err(ParseError {
                            position: spos,
                            message: "non-integer exponent".into(),
                        });
                    }
                    if k.is_zero() {
                        return Err(ParseError {
                            position: epos,
                            message: "exponent must be a positive integer".into(),
                        });
                    }
                    let k: u32 = k.try_into().map_err(|_| ParseError {
                        position: epos,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                Some((p, Tok::Minus)) => Err(ParseError {
                    position: p,
                    message: "non-integer exponent".into(),
                }),
                Some((p, _)) => Err(ParseError {
                    position: p,
                    message: "expected positive integer exponent".into(),
                }),
                None => Err(ParseError {
                    position: self.end,
                    message: "expected exponent after `^`".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn quartic_form_has_four_terms() {
        let v = VarSet::new(["x", "y"]);
        let p = parse("2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4", &v).unwrap();
        assert_eq!(p.term_count(), 4);
        assert_eq!(p.coeff(&Exponent(vec![4, 0])), rat(2));
        assert_eq!(p.coeff(&Exponent(vec![3, 1])), rat(2));
        assert_eq!(p.coeff(&Exponent(vec![2, 2])), rat(-1));
        assert_eq!(p.coeff(&Exponent(vec![0, 4])), rat(5));
    }

    #[test]
    fn zero_literal_is_zero_polynomial() {
        let v = VarSet::new(["x"]);
        let p = parse("0", &v).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.term_count(), 0);
    }

    #[test]
    fn algebraic_identity_cancels_to_zero() {
        let v = VarSet::new(["x", "y"]);
        let p = parse("(x+y)^2 - x^2 - 2*x*y - y^2", &v).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn juxtaposed_coefficient() {
        let v = VarSet::new(["x"]);
        assert_eq!(parse("2x", &v).unwrap(), parse("2*x", &v).unwrap());
        assert_eq!(parse("1/2x^2", &v).unwrap(), parse("1/2*x^2", &v).unwrap());
    }

    #[test]
    fn unknown_variable_reports_position() {
        let v = VarSet::new(["x"]);
        let err = parse("x + 3*zz", &v).unwrap_err();
        assert_eq!(err.position, 6);
        assert!(err.message.contains("zz"));
    }

    #[test]
    fn syntax_error_reports_position() {
        let v = VarSet::new(["x"]);
        let err = parse("x + + +", &v).unwrap_err();
        assert!(err.position >= 4);
        let err = parse("x ^", &v).unwrap_err();
        assert_eq!(err.position, 3);
    }

    #[test]
    fn non_integer_exponent_rejected() {
        let v = VarSet::new(["x"]);
        let err = parse("x^1/2", &v).unwrap_err();
        assert!(err.message.contains("non-integer exponent"));
        let err = parse("x^-2", &v).unwrap_err();
        assert!(err.message.contains("non-integer") || err.message.contains("positive"));
        assert!(parse("x^0", &v).is_err());
    }

    #[test]
    fn parenthesized_powers() {
        let v = VarSet::new(["x", "y"]);
        let p = parse("(1+x^2)^2*(x - y)", &v).unwrap();
        let q = parse("x - y + 2*x^3 - 2*x^2*y + x^5 - x^4*y", &v).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn display_round_trips() {
        let v = VarSet::new(["x", "y"]);
        for text in [
            "2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4",
            "-x + 1/3",
            "x^2*y^2 - 7",
            "0",
        ] {
            let p = parse(text, &v).unwrap();
            let q = parse(&p.to_string(), &v).unwrap();
            assert_eq!(p, q);
        }
    }
}
