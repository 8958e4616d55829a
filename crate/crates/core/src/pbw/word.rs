use std::collections::BTreeMap;
use std::fmt;

use super::element::{normal_form, PbwElement};
use super::Generator;
use crate::error::Result;
use crate::scalars::parse::{parse_expr_value, ExprValue};
use crate::scalars::Scalar;

/// A linear combination of words in the generators, not rewritten.
///
/// Module actions of relations are checked on these literally, so that a
/// relation is tested as written rather than through the rewriting system.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FreeExpr {
    terms: BTreeMap<Vec<Generator>, Scalar>,
}

impl FreeExpr {
    pub fn zero() -> FreeExpr {
        FreeExpr::default()
    }

    pub fn scalar(c: Scalar) -> FreeExpr {
        FreeExpr::word_with(vec![], c)
    }

    pub fn word(word: Vec<Generator>) -> FreeExpr {
        FreeExpr::word_with(word, Scalar::one())
    }

    pub fn word_with(word: Vec<Generator>, c: Scalar) -> FreeExpr {
        let mut e = FreeExpr::zero();
        e.add_word(word, &c);
        e
    }

    pub fn generator(g: Generator) -> FreeExpr {
        FreeExpr::word(vec![g])
    }

    pub fn add_word(&mut self, word: Vec<Generator>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn plus(&self, other: &FreeExpr) -> FreeExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c);
        }
        out
    }

    pub fn minus(&self, other: &FreeExpr) -> FreeExpr {
        self.plus(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (w, x) in &self.terms {
            out.add_word(w.clone(), &(x * c));
        }
        out
    }

    pub fn times(&self, other: &FreeExpr) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, &(c1 * c2));
            }
        }
        out
    }

    pub fn normal_form(&self) -> PbwElement {
        normal_form(self)
    }

    /// `Some((c, w))` if the expression is a single scaled word.
    fn single(&self) -> Option<(&Vec<Generator>, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl fmt::Display for FreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<&str> = w.iter().map(|g| g.name()).collect();
            match (c.is_one(), w.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", word.join("*"))?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c})*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeExpr({self})")
    }
}

impl ExprValue for FreeExpr {
    fn from_scalar(s: Scalar) -> Self {
        FreeExpr::scalar(s)
    }

    fn identifier(name: &str) -> Option<Self> {
        Generator::from_name(name).map(FreeExpr::generator)
    }

    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }

    fn sub(self, rhs: Self) -> Self {
        self.minus(&rhs)
    }

    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }

    fn neg(self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    fn div(self, rhs: Self) -> std::result::Result<Self, String> {
        match rhs.single() {
            Some((w, c)) if w.is_empty() => {
                Ok(self.scale(&c.inv().map_err(|_| "division by zero".to_string())?))
            }
            _ => Err("only division by scalars is allowed".into()),
        }
    }

    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        if e >= 0 {
            return Ok((0..e).fold(FreeExpr::scalar(Scalar::one()), |acc, _| acc.times(&self)));
        }
        // Negative powers: scalars and words in K, Kinv only.
        let (w, c) = self
            .single()
            .ok_or("negative powers need a single K-word or scalar")?;
        if !w
            .iter()
            .all(|g| matches!(g, Generator::K | Generator::Kinv))
        {
            return Err("negative powers are only allowed on K".into());
        }
        let inv_word: Vec<Generator> = w
            .iter()
            .rev()
            .map(|g| {
                if *g == Generator::K {
                    Generator::Kinv
                } else {
                    Generator::K
                }
            })
            .collect();
        let inv = FreeExpr::word_with(
            inv_word,
            c.inv()
                .map_err(|_| "zero to a negative power".to_string())?,
        );
        inv.pow(-e)
    }
}

/// Parses an algebra expression without rewriting it.
pub fn parse_word_expr(text: &str) -> Result<FreeExpr> {
    parse_expr_value(text)
}

/// Parses an algebra expression and returns its normal form.
pub fn parse_expr(text: &str) -> Result<PbwElement> {
    Ok(parse_word_expr(text)?.normal_form())
}
