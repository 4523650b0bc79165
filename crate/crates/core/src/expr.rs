//! Recursive-descent parser and evaluator for element expressions.
//!
//! Grammar: expr := '-'? term (('+'|'-') term)*; term := factor (('*'|'/')
//! factor)*; factor := base ('^' '-'? integer)?; base := integer | 'p' | 'z'
//! | 'zeta' | 'u' | 's' | '(' expr ')'. Whitespace is insignificant. The
//! leading unary minus is accepted so inputs like "-1" work.

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElem};

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

/// Parses and evaluates `src` to an exact element of `field`.
pub fn eval_expr(field: &Field, src: &str) -> Result<FieldElem> {
    let mut p = Parser {
        field,
        src: src.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            self.field.neg(&self.term()?)
        } else {
            self.term()?
        };
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.field.add(&acc, &rhs);
                }
                b'-' => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.field.sub(&acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.field.mul(&acc, &rhs);
                }
                b'/' => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.field.div(&acc, &rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FieldElem> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let neg = if self.peek() == Some(b'-') {
                self.bump();
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = if neg { -e } else { e };
            return self.field.pow(&base, e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<FieldElem> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.field.from_int(n))
            }
            Some(b'z') => {
                // `zeta` or `z`
                if self.src[self.pos..].starts_with(b"zeta") {
                    self.pos += 4;
                    Ok(self.field.zeta())
                } else {
                    self.pos += 1;
                    Ok(self.field.z())
                }
            }
            Some(b'p') => {
                self.bump();
                Ok(self.field.p_elem())
            }
            Some(b'u') => {
                let r = self.field.u();
                self.bump();
                r
            }
            Some(b's') => {
                let r = self.field.s();
                self.bump();
                r
            }
            _ => Err(self.err("expected integer, symbol, or `(`")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_field, FieldDesc};
    use crate::value::Value;

    fn field(p: u32, with_u: bool, n: u32) -> Field {
        make_field(FieldDesc {
            p,
            with_u,
            tower_level: n,
        })
        .unwrap()
    }

    #[test]
    fn spec_examples() {
        let ku = field(3, true, 0);
        let x = eval_expr(&ku, "1 + u*z").unwrap();
        assert_eq!(ku.valuation(&x), Value::zero());

        let k3 = field(3, false, 0);
        let y = eval_expr(&k3, "z^3/(1+z)").unwrap();
        assert_eq!(k3.valuation(&y), Value::from_ratio(3, 2));

        let k31 = field(3, false, 1);
        let w = eval_expr(&k31, "s^2").unwrap();
        assert_eq!(k31.valuation(&w), Value::from_ratio(2, 3));
    }

    #[test]
    fn unary_minus_and_precedence() {
        let k2 = field(2, false, 0);
        assert_eq!(eval_expr(&k2, "-1").unwrap(), k2.from_int(-1));
        assert_eq!(eval_expr(&k2, "2 + 3*4").unwrap(), k2.from_int(14));
        assert_eq!(eval_expr(&k2, "(2 + 3)*4").unwrap(), k2.from_int(20));
        assert_eq!(eval_expr(&k2, "2^-1").unwrap(), k2.from_rational(
            num_rational::BigRational::new(1.into(), 2.into()),
        ));
    }

    #[test]
    fn errors_carry_position() {
        let k3 = field(3, false, 0);
        match eval_expr(&k3, "1 + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(matches!(eval_expr(&k3, "u"), Err(Error::UnknownSymbol('u'))));
        assert!(matches!(eval_expr(&k3, "s"), Err(Error::UnknownSymbol('s'))));
        assert!(matches!(eval_expr(&k3, "1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(eval_expr(&k3, "1 + (2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn zeta_token() {
        let k3 = field(3, false, 0);
        let zeta = eval_expr(&k3, "zeta").unwrap();
        assert_eq!(zeta, k3.add(&k3.one(), &k3.z()));
        assert_eq!(eval_expr(&k3, "zeta - 1").unwrap(), k3.z());
    }
}
