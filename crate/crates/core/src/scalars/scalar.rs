use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly, Rational, Var, NVARS};
use crate::error::{Error, Result};

/// An element of Q(t, z, w) (plus the internal variable `u`) in canonical form.
///
/// The fraction is reduced and the denominator has leading coefficient one,
/// so two scalars are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    /// `t`, the square root of `q`.
    pub fn t() -> Scalar {
        Scalar::var(Var::T)
    }

    /// The central-charge variable.
    pub fn z() -> Scalar {
        Scalar::var(Var::Z)
    }

    /// The generic weight variable.
    pub fn w() -> Scalar {
        Scalar::var(Var::W)
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Scalar {
        let m = Poly::monomial(Mono::var(Var::T, k.unsigned_abs() as u32), Rational::one());
        if k >= 0 {
            Scalar::from_poly(m)
        } else {
            Scalar {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `q^k = t^(2k)`.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::t_pow(2 * k)
    }

    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_parts(num, den))
    }

    fn normalize_parts(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Self::fix_leading(num, den)
    }

    fn fix_leading(num: Poly, den: Poly) -> Scalar {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Re-normalizes; canonical values are fixed points.
    pub fn normalize(&self) -> Scalar {
        Self::normalize_parts(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Rough size used for pivot choice in elimination.
    pub fn complexity(&self) -> usize {
        self.num.weight() + self.den.weight()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_leading(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Scalar {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale_rational(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitutes `value` for the variable `v`.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Scalar> {
        let n = subst_poly(&self.num, v, value)?;
        let d = subst_poly(&self.den, v, value)?;
        n.checked_div(&d).map_err(|_| Error::DenominatorVanishes)
    }

    /// Evaluates at rational values of `(t, z, w, u)`.
    pub fn eval_at(&self, values: &[Rational; NVARS]) -> Result<Rational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(values) / d)
    }

    /// True when `t` only occurs to even powers, i.e. the scalar is a
    /// rational function of `q`.
    pub fn is_rational_in_q(&self) -> bool {
        self.num.only_even_powers(Var::T) && self.den.only_even_powers(Var::T)
    }

    /// For a Laurent polynomial (denominator a monomial) returns its terms as
    /// `(coefficient, exponent vector with signed entries)`.
    pub fn laurent_terms(&self) -> Option<Vec<(Rational, [i64; NVARS])>> {
        if self.den.len() != 1 {
            return None;
        }
        let (dm, dc) = &self.den.terms()[0];
        let de = dm.exps();
        Some(
            self.num
                .terms()
                .iter()
                .map(|(m, c)| {
                    let e = m.exps();
                    let mut out = [0i64; NVARS];
                    for i in 0..NVARS {
                        out[i] = e[i] as i64 - de[i] as i64;
                    }
                    (c / dc, out)
                })
                .collect(),
        )
    }

    /// Builds the Laurent monomial `c * t^a * z^b * w^c * u^d` (signed exponents).
    pub fn laurent_monomial(c: Rational, exps: [i64; NVARS]) -> Scalar {
        let mut num = [0u32; NVARS];
        let mut den = [0u32; NVARS];
        for i in 0..NVARS {
            if exps[i] >= 0 {
                num[i] = exps[i] as u32;
            } else {
                den[i] = (-exps[i]) as u32;
            }
        }
        Scalar {
            num: Poly::monomial(Mono::from_exps(num), c),
            den: Poly::monomial(Mono::from_exps(den), Rational::one()),
        }
    }
}

fn subst_poly(p: &Poly, v: Var, value: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    let coeffs = p.coefficients_in(v);
    let mut prev_deg: Option<u32> = None;
    // Horner in descending degree order.
    for (k, c) in coeffs {
        if let Some(pd) = prev_deg {
            acc = &acc * &value.pow((pd - k) as i64)?;
        }
        acc = &acc + &Scalar::from_poly(c);
        prev_deg = Some(k);
    }
    if let Some(pd) = prev_deg {
        acc = &acc * &value.pow(pd as i64)?;
    }
    Ok(acc)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: Poly::one(),
                };
            }
            return Scalar::normalize_parts(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            // Coprime denominators keep the sum reduced.
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return Scalar::zero();
            }
            return Scalar::fix_leading(num, self.den.mul(&rhs.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = b1.mul(&rhs.den);
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Scalar::fix_leading(num, den)
        } else {
            Scalar::fix_leading(
                num.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        if let Some(c) = self.as_rational() {
            return rhs.scale_rational(&c);
        }
        if let Some(c) = rhs.as_rational() {
            return self.scale_rational(&c);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                rhs.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        Scalar::fix_leading(a.mul(&c), b.mul(&d))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.len() == 1 {
                format!("{}", self.num)
            } else {
                format!("({})", self.num)
            };
            // Only a single variable power may go unparenthesized after '/'.
            let simple = self.den.len() == 1
                && self.den.terms()[0].1.is_one()
                && self.den.terms()[0]
                    .0
                    .exps()
                    .iter()
                    .filter(|&&e| e != 0)
                    .count()
                    == 1;
            let den = if simple {
                format!("{}", self.den)
            } else {
                format!("({})", self.den)
            };
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => super::parse::parse_scalar(&s).map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality() {
        let t = Scalar::t();
        let a = (&t * &t - Scalar::one()) / (&t - Scalar::one());
        assert_eq!(a, &t + &Scalar::one());
        let half = Scalar::ratio(1, 2);
        assert_eq!(&half + &half, Scalar::one());
        // Denominator is made monic.
        let x = Scalar::one() / (Scalar::from_int(2) * Scalar::z());
        assert_eq!(x.denom().leading_coeff(), Rational::one());
        assert_eq!(x.to_string(), "1/2/z");
    }

    #[test]
    fn inverse_and_zero_division() {
        let a = Scalar::t() + Scalar::w();
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn substitution() {
        // (w^2 - 1)/(w - t) at w = t^3
        let w = Scalar::w();
        let t = Scalar::t();
        let s = (&w * &w - Scalar::one()) / (&w - &t);
        let r = s.substitute(Var::W, &Scalar::t_pow(3)).unwrap();
        let expect = (Scalar::t_pow(6) - Scalar::one()) / (Scalar::t_pow(3) - t);
        assert_eq!(r, expect);
    }

    #[test]
    fn laurent_roundtrip() {
        let s = Scalar::t_pow(-3) * Scalar::from_int(2) + Scalar::w() * Scalar::t();
        let terms = s.laurent_terms().unwrap();
        let rebuilt: Scalar = terms
            .into_iter()
            .map(|(c, e)| Scalar::laurent_monomial(c, e))
            .sum();
        assert_eq!(rebuilt, s);
    }
}
