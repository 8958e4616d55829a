//! Recursive-descent parser shared by the scalar and algebra-expression grammars.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := atom ['^' exponent]
//! atom   := integer | identifier | '(' expr ')'
//! exponent := ['-'|'+'] integer | '(' ['-'|'+'] integer ['/' integer] ')'
//! ```
//!
//! Scalar identifiers are `t`, `q` (= t^2), `z`, `w`. Half-integer exponents
//! are accepted on `q` only.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Values an expression can be parsed into.
pub trait ExprValue: Sized + Clone {
    fn from_scalar(s: Scalar) -> Self;
    /// Identifiers beyond the scalar variables; `None` if unknown.
    fn identifier(name: &str) -> Option<Self>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, rhs: Self) -> std::result::Result<Self, String>;
    fn pow(self, e: i64) -> std::result::Result<Self, String>;
}

impl ExprValue for Scalar {
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn identifier(_: &str) -> Option<Self> {
        None
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn neg(self) -> Self {
        -self
    }
    fn div(self, rhs: Self) -> std::result::Result<Self, String> {
        self.checked_div(&rhs)
            .map_err(|_| "division by zero".to_string())
    }
    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        Scalar::pow(&self, e).map_err(|_| "zero raised to a negative power".to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expr<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc = if self.eat('-') {
            self.term::<V>()?.neg()
        } else {
            self.eat('+');
            self.term::<V>()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc = self.factor::<V>()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.factor()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.idx += 1;
                let rhs = self.factor()?;
                acc = acc.div(rhs).map_err(|msg| Error::Syntax { pos, msg })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<V: ExprValue>(&mut self) -> Result<V> {
        if self.eat('-') {
            return Ok(self.factor::<V>()?.neg());
        }
        self.power()
    }

    fn power<V: ExprValue>(&mut self) -> Result<V> {
        let is_q = matches!(self.peek(), Some(Tok::Ident(s)) if s == "q");
        let base = self.atom::<V>()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let e = self.exponent()?;
        if is_q && e.denom() == &BigInt::from(2) {
            let k = e.numer().to_i64().ok_or(Error::Syntax {
                pos,
                msg: "exponent too large".into(),
            })?;
            return Ok(V::from_scalar(Scalar::t_pow(k)));
        }
        if !e.is_integer() {
            return Err(Error::Syntax {
                pos,
                msg: "fractional exponents are only allowed on q (halves)".into(),
            });
        }
        let k = e.to_integer().to_i64().ok_or(Error::Syntax {
            pos,
            msg: "exponent too large".into(),
        })?;
        base.pow(k).map_err(|msg| Error::Syntax { pos, msg })
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.idx += 1;
                Ok(n)
            }
            _ => self.err("expected integer"),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat('(') {
            let neg = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let n = self.int()?;
            let d = if self.eat('/') {
                self.int()?
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            let r = Rational::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = Rational::from_integer(self.int()?);
        Ok(if neg { -n } else { n })
    }

    fn atom<V: ExprValue>(&mut self) -> Result<V> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.idx += 1;
                Ok(V::from_scalar(Scalar::from_rational(
                    Rational::from_integer(n),
                )))
            }
            Some(Tok::Ident(name)) => {
                let v = match name.as_str() {
                    "t" => Some(V::from_scalar(Scalar::t())),
                    "q" => Some(V::from_scalar(Scalar::q())),
                    "z" => Some(V::from_scalar(Scalar::z())),
                    "w" => Some(V::from_scalar(Scalar::w())),
                    other => V::identifier(other),
                };
                match v {
                    Some(v) => {
                        self.idx += 1;
                        Ok(v)
                    }
                    None => self.err(format!("unknown identifier '{name}'")),
                }
            }
            Some(Tok::Sym('(')) => {
                self.idx += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into any [`ExprValue`].
pub fn parse_expr_value<V: ExprValue>(text: &str) -> Result<V> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses a scalar in the grammar above.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    parse_expr_value(text)
}

/// Formats `t^k` as a power of `q`.
pub(crate) fn half_exponent_string(k: i64) -> String {
    if k % 2 == 0 {
        format!("q^{}", k / 2)
    } else {
        format!("q^({k}/2)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_grammar() {
        assert_eq!(parse_scalar("q").unwrap(), Scalar::t_pow(2));
        assert_eq!(parse_scalar("q^(-1/2)").unwrap(), Scalar::t_pow(-1));
        assert_eq!(
            parse_scalar("q^-1 + 2").unwrap(),
            Scalar::t_pow(-2) + Scalar::from_int(2)
        );
        assert_eq!(
            parse_scalar("-(z - 1)*w").unwrap(),
            (Scalar::one() - Scalar::z()) * Scalar::w()
        );
        assert_eq!(
            parse_scalar("3/2*t^2").unwrap(),
            Scalar::ratio(3, 2) * Scalar::t_pow(2)
        );
        assert_eq!(
            parse_scalar(" 1 / ( q - 1 ) ").unwrap(),
            Scalar::one() / (Scalar::q() - Scalar::one())
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_scalar("t + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_scalar("t^(1/2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scalar("x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scalar("1/(t-t)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scalar(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn half_exponents_print() {
        assert_eq!(half_exponent_string(-1), "q^(-1/2)");
        assert_eq!(half_exponent_string(4), "q^2");
    }
}
