//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials pack four 16-bit exponents into a `u64` so that the derived
//! ordering on the integer is the lexicographic order `t > z > w > u`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rational coefficient type.
pub type Rational = BigRational;

/// Number of formal variables.
pub const NVARS: usize = 4;

/// Formal variables of the coefficient field.
///
/// `T` is the square root of `q`, `Z` the central charge, `W` a generic
/// weight parameter. `U` is an auxiliary variable used internally to form
/// divided differences; it never appears in parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T = 0,
    Z = 1,
    W = 2,
    U = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T, Var::Z, Var::W, Var::U];

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Z => "z",
            Var::W => "w",
            Var::U => "u",
        }
    }

    fn shift(self) -> u32 {
        48 - 16 * self as u32
    }
}

const FIELD: u64 = 0xffff;

/// A packed exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(v: Var, e: u32) -> Mono {
        assert!(e as u64 <= FIELD, "exponent overflow");
        Mono((e as u64) << v.shift())
    }

    pub fn from_exps(exps: [u32; NVARS]) -> Mono {
        let mut m = Mono::ONE;
        for v in Var::ALL {
            m = m.mul(Mono::var(v, exps[v as usize]));
        }
        m
    }

    #[inline]
    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> v.shift()) & FIELD) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        [
            self.exp(Var::T),
            self.exp(Var::Z),
            self.exp(Var::W),
            self.exp(Var::U),
        ]
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        debug_assert!(Var::ALL
            .iter()
            .all(|&v| self.exp(v) + o.exp(v) <= FIELD as u32));
        Mono(self.0 + o.0)
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= o.exp(v))
    }

    /// `o / self`; caller guarantees divisibility.
    #[inline]
    pub fn div_into(self, o: Mono) -> Mono {
        debug_assert!(self.divides(o));
        Mono(o.0 - self.0)
    }

    pub fn min(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for v in Var::ALL {
            e[v as usize] = self.exp(v).min(o.exp(v));
        }
        Mono::from_exps(e)
    }

    pub fn total_degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    pub fn without(self, v: Var) -> Mono {
        Mono(self.0 & !(FIELD << v.shift()))
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// A polynomial stored as terms sorted by descending monomial, without zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(m: Mono, c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v, 1), Rational::one())
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> Poly {
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = acc.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Sum of the numbers of digits of all coefficients plus the number of terms.
    pub fn weight(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, c)| {
                1 + m.total_degree() as usize + (c.numer().bits() + c.denom().bits()) as usize / 8
            })
            .sum()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Mono::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.min(*m))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, mono: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: Mono, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Divides every exponent vector by `mono`; caller guarantees divisibility.
    pub fn div_mono(&self, mono: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.div_into(*m), c.clone()))
                .collect(),
        }
    }

    /// `self + sign * other` via a sorted merge.
    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(*m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(*m, c);
        }
        let mut acc: HashMap<Mono, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            if !self.terms.iter().all(|(sm, _)| m.divides(*sm)) {
                return None;
            }
            let inv = c.recip();
            return Some(Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(sm, sc)| (m.div_into(*sm), sc * &inv))
                    .collect(),
            });
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.div_into(rm);
            let qc = &rc * &lc_inv;
            rem = rem.sub(&divisor.mul_term(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Splits by powers of `v`: returns `(k, coefficient)` pairs with `k`
    /// descending; coefficients do not contain `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<(u32, Poly)> {
        let mut map: std::collections::BTreeMap<u32, Vec<(Mono, Rational)>> =
            std::collections::BTreeMap::new();
        for (m, c) in &self.terms {
            map.entry(m.exp(v))
                .or_default()
                .push((m.without(v), c.clone()));
        }
        map.into_iter()
            .rev()
            .map(|(k, mut ts)| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (k, Poly { terms: ts })
            })
            .collect()
    }

    /// Leading coefficient with respect to `v`, as a polynomial free of `v`.
    pub fn leading_coeff_in(&self, v: Var) -> (u32, Poly) {
        let d = self.degree(v);
        let mut ts: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == d)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        (d, Poly { terms: ts })
    }

    pub fn eval(&self, values: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    term *= num_traits::pow(values[v as usize].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// True when every exponent of `v` is even.
    pub fn only_even_powers(&self, v: Var) -> bool {
        self.terms.iter().all(|(m, _)| m.exp(v) % 2 == 0)
    }

    pub fn content_sign_positive(&self) -> bool {
        self.terms
            .first()
            .map(|t| t.1.is_positive())
            .unwrap_or(true)
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_mono(*m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_mono(*m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::var(Var::T)
    }
    fn z() -> Poly {
        Poly::var(Var::Z)
    }

    #[test]
    fn mono_order_is_lex_t_first() {
        assert!(Mono::var(Var::T, 1) > Mono::var(Var::Z, 5));
        assert!(Mono::var(Var::Z, 1) > Mono::var(Var::W, 9));
        let m = Mono::from_exps([2, 0, 3, 1]);
        assert_eq!(m.exps(), [2, 0, 3, 1]);
        assert_eq!(m.without(Var::W).exps(), [2, 0, 0, 1]);
    }

    #[test]
    fn arithmetic_and_exact_division() {
        let a = t().add(&Poly::one()); // t + 1
        let b = t().sub(&Poly::one()); // t - 1
        let p = a.mul(&b);
        assert_eq!(p, t().pow(2).sub(&Poly::one()));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&z()), None);
        assert_eq!(t().pow(3).add(&z()).div_exact(&t()), None);
    }

    #[test]
    fn display_sorted() {
        let p = z()
            .scale(&Rational::new(3.into(), 2.into()))
            .add(&t().pow(2))
            .sub(&Poly::one());
        assert_eq!(p.to_string(), "t^2 + 3/2*z - 1");
    }

    #[test]
    fn coefficients_split() {
        let p = t().mul(&z()).add(&z().pow(2)).add(&t());
        let cs = p.coefficients_in(Var::Z);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].0, 2);
        assert_eq!(cs[1], (1, t()));
        assert_eq!(cs[2], (0, t()));
    }
}
