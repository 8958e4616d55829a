use std::fmt;

use num_traits::{One, Signed, Zero};

use super::parse::half_exponent_string;
use super::poly::{Rational, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A nonzero K-eigenvalue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight(Scalar);

/// A weight of the form `coeff * w^w_exp * t^t_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWeight {
    pub coeff: Rational,
    pub t_exp: i64,
    pub w_exp: i64,
}

impl MonomialWeight {
    /// `±q^{k/2}` with unit coefficient and no `w`.
    pub fn is_signed_q_power(&self) -> bool {
        self.w_exp == 0 && self.coeff.abs().is_one()
    }

    pub fn sign(&self) -> i64 {
        if self.coeff.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl Weight {
    pub fn new(value: Scalar) -> Result<Weight> {
        if value.is_zero() {
            Err(Error::InvalidWeight)
        } else {
            Ok(Weight(value))
        }
    }

    /// `sign * t^t_exp`, i.e. `sign * q^{t_exp/2}`.
    pub fn signed_half_power(sign: i64, t_exp: i64) -> Weight {
        Weight(Scalar::t_pow(t_exp) * Scalar::from_int(sign.signum()))
    }

    /// `q^{k/2}`.
    pub fn q_half(k: i64) -> Weight {
        Weight::signed_half_power(1, k)
    }

    /// The symbolic weight `w`.
    pub fn generic() -> Weight {
        Weight(Scalar::w())
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn into_scalar(self) -> Scalar {
        self.0
    }

    /// Multiplies by `t^k` (k half-steps of q).
    pub fn shift_half_steps(&self, k: i64) -> Weight {
        Weight(&self.0 * &Scalar::t_pow(k))
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> Weight {
        self.shift_half_steps(2 * k)
    }

    pub fn inv(&self) -> Weight {
        Weight(self.0.inv().expect("weights are nonzero"))
    }

    pub fn as_monomial(&self) -> Option<MonomialWeight> {
        let terms = self.0.laurent_terms()?;
        match terms.as_slice() {
            [(c, e)] if e[Var::Z as usize] == 0 && e[Var::U as usize] == 0 => {
                Some(MonomialWeight {
                    coeff: c.clone(),
                    t_exp: e[Var::T as usize],
                    w_exp: e[Var::W as usize],
                })
            }
            _ => None,
        }
    }

    pub fn from_monomial(m: &MonomialWeight) -> Result<Weight> {
        if m.coeff.is_zero() {
            return Err(Error::InvalidWeight);
        }
        Ok(Weight(Scalar::laurent_monomial(
            m.coeff.clone(),
            [m.t_exp, 0, m.w_exp, 0],
        )))
    }

    /// `Some(k)` when `self = other * t^k`.
    pub fn half_step_offset(&self, other: &Weight) -> Option<i64> {
        let ratio = Weight(&self.0 / &other.0).as_monomial()?;
        (ratio.w_exp == 0 && ratio.coeff == Rational::one()).then_some(ratio.t_exp)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_monomial() {
            Some(m) if m.is_signed_q_power() => {
                let sign = if m.sign() < 0 { "-" } else { "" };
                if m.t_exp == 0 {
                    write!(f, "{sign}1")
                } else {
                    write!(f, "{sign}{}", half_exponent_string(m.t_exp))
                }
            }
            _ => write!(f, "{}", self.0),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
