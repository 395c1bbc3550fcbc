//! Precedence-climbing parser for the expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          (right associative)
//! primary := integer | identifier | function '(' expr ')' | '(' expr ')'
//! function:= sin | cos | tan | exp | log | sqrt
//! ```
//!
//! Rational constants are written as quotients of integers (`1/2`); decimal
//! literals are rejected. Exponents must reduce to a rational constant.

use num_bigint::BigInt;

use super::canon::Rf;
use super::coords::CoordinateSystem;
use super::expr::{Expr, Func, Rational};
use super::SymError;

pub(crate) const RESERVED: [&str; 6] = ["sin", "cos", "tan", "exp", "log", "sqrt"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SymError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        let start = k;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k < bytes.len() && (bytes[k] == b'.' || bytes[k] == b'e' || bytes[k] == b'E') {
                return Err(SymError::Syntax {
                    pos: k,
                    msg: "decimal literals are not allowed; write rationals as a/b".into(),
                });
            }
            let digits = &text[start..k];
            out.push((Tok::Int(digits.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                k += 1;
            }
            out.push((Tok::Ident(text[start..k].to_string()), start));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => {
                    return Err(SymError::Syntax {
                        pos: k,
                        msg: "decimal literals are not allowed; write rationals as a/b".into(),
                    })
                }
                _ => return Err(SymError::Syntax { pos: k, msg: format!("unexpected character '{c}'") }),
            };
            out.push((tok, start));
            k += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    len: usize,
    coords: &'a CoordinateSystem,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SymError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(SymError::Syntax { pos, msg: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Expr, SymError> {
        let mut terms = vec![self.term()?];
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let t = self.term()?;
            terms.push(if op == '-' { -t } else { t });
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, SymError> {
        let mut factors = vec![self.unary()?];
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.bump();
            let f = self.unary()?;
            factors.push(if op == '/' { f.recip() } else { f });
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::product(factors) })
    }

    fn unary(&mut self) -> Result<Expr, SymError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SymError> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            let pos = self.pos();
            let exponent = self.unary()?;
            let value = Rf::from_expr(&exponent)
                .ok()
                .and_then(|r| r.as_constant())
                .ok_or(SymError::Syntax { pos, msg: "exponent must be a rational constant".into() })?;
            return Ok(Expr::pow(base, value));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, SymError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(k)) => Ok(Expr::constant(Rational::from_integer(k))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if let Some(f) = Func::from_name(&name) {
                    self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Expr::func(f, arg));
                }
                self.coords
                    .lookup(&name)
                    .map(Expr::coord)
                    .ok_or(SymError::UnknownIdentifier { name, pos })
            }
            Some(_) => Err(SymError::Syntax { pos, msg: "expected an operand".into() }),
            None => Err(SymError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` against the coordinates of `coords`.
pub fn parse_expression(text: &str, coords: &CoordinateSystem) -> Result<Expr, SymError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, len: text.len(), coords };
    let e = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(SymError::Syntax { pos: parser.pos(), msg: "trailing input".into() });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs() -> CoordinateSystem {
        CoordinateSystem::new(1, 2).unwrap()
    }

    #[test]
    fn power_of_function() {
        let c = cs();
        let e = parse_expression("sin(x1)^2", &c).unwrap();
        let expected = Expr::powi(Expr::sin(Expr::coord(c.x(0))), 2);
        assert_eq!(e, expected);
    }

    #[test]
    fn rational_coefficient() {
        let c = cs();
        let e = parse_expression("1/2*exp(2*t1)", &c).unwrap();
        let expected = Expr::product(vec![
            Expr::product(vec![Expr::one(), Expr::int(2).recip()]),
            Expr::exp(Expr::product(vec![Expr::int(2), Expr::coord(c.t(0))])),
        ]);
        assert_eq!(e, expected);
        assert_eq!(e.normalize().unwrap(), parse_expression("exp(2*t1)/2", &c).unwrap().normalize().unwrap());
    }

    #[test]
    fn unknown_identifier_names_symbol() {
        let err = parse_expression("x1 + y", &cs()).unwrap_err();
        assert_eq!(err, SymError::UnknownIdentifier { name: "y".into(), pos: 5 });
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse_expression("x1 + ", &cs()), Err(SymError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_expression("0.5*x1", &cs()), Err(SymError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expression("(x1", &cs()), Err(SymError::Syntax { .. })));
        assert!(matches!(parse_expression("x1^x2", &cs()), Err(SymError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expression("x1 x2", &cs()), Err(SymError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let c = cs();
        let v = |s: &str| parse_expression(s, &c).unwrap().normalize().unwrap();
        assert_eq!(v("2^3^2"), v("512"));
        assert_eq!(v("-x1^2"), v("-(x1^2)"));
        assert_eq!(v("x1 - x2 - t1"), v("x1 - (x2 + t1)"));
        assert_eq!(v("8/2/2"), v("2"));
        assert_eq!(v("x1^-1"), v("1/x1"));
    }
}
