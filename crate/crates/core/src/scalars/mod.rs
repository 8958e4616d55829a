//! Exact arithmetic in Q(t, z, w) with q = t^2, and the quantum integers.

mod gcd;
pub mod parse;
pub mod poly;
mod scalar;
mod weight;

pub use parse::parse_scalar;
pub use poly::{Mono, Poly, Rational, Var};
pub use scalar::Scalar;
pub use weight::{MonomialWeight, Weight};

use num_traits::Zero;

use crate::error::{Error, Result};

/// The quantum integer `[n] = (q^n - q^-n) / (q - q^-1)`.
pub fn qint(n: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    // Sum of q^(n-1-2j), j = 0..|n|-1, with the sign of n.
    let k = n.abs();
    let s: Scalar = (0..k).map(|j| Scalar::q_pow(k - 1 - 2 * j)).sum();
    if n < 0 {
        -s
    } else {
        s
    }
}

/// Evaluates a scalar at `q = q0, z = z0, w = w0`.
///
/// If the scalar only involves even powers of `t` it is evaluated as a
/// function of `q` directly; otherwise `t = sqrt(q0)` must be rational.
pub fn eval_numeric(s: &Scalar, q0: &Rational, z0: &Rational, w0: &Rational) -> Result<Rational> {
    if s.is_zero() {
        return Ok(Rational::zero());
    }
    if s.is_rational_in_q() {
        // Substitute t^2 -> q0 by halving every t exponent.
        let halve = |p: &Poly| {
            Poly::from_terms(p.terms().iter().map(|(m, c)| {
                let mut e = m.exps();
                e[Var::T as usize] /= 2;
                (Mono::from_exps(e), c.clone())
            }))
        };
        let vals = [q0.clone(), z0.clone(), w0.clone(), Rational::zero()];
        let d = halve(s.denom()).eval(&vals);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        return Ok(halve(s.numer()).eval(&vals) / d);
    }
    let t0 = weight::rational_sqrt(q0).ok_or_else(|| Error::NonRationalRoot(q0.to_string()))?;
    eval_at_t(s, &t0, z0, w0)
}

/// Evaluates a scalar at `t = t0, z = z0, w = w0`.
pub fn eval_at_t(s: &Scalar, t0: &Rational, z0: &Rational, w0: &Rational) -> Result<Rational> {
    s.eval_at(&[t0.clone(), z0.clone(), w0.clone(), Rational::zero()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent route: the literal quotient (q^n - q^-n)/(q - q^-1).
    fn qint_by_division(n: i64) -> Scalar {
        (Scalar::q_pow(n) - Scalar::q_pow(-n)) / (Scalar::q() - Scalar::q_pow(-1))
    }

    #[test]
    fn qint_small_values() {
        assert_eq!(qint(0), Scalar::zero());
        assert_eq!(qint(1), Scalar::one());
        assert_eq!(qint(2), Scalar::q() + Scalar::q_pow(-1));
        for n in -8..=8 {
            assert_eq!(qint(n), qint_by_division(n), "n = {n}");
        }
    }

    #[test]
    fn qint_antisymmetry() {
        for n in -20..=20 {
            assert_eq!(qint(-n), -qint(n));
        }
    }

    #[test]
    fn qint_addition_rule() {
        for m in -10..=10 {
            for n in -10..=10 {
                let rhs = Scalar::q_pow(n) * qint(m) + Scalar::q_pow(-m) * qint(n);
                assert_eq!(qint(m + n), rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let z = Rational::zero();
        assert_eq!(eval_numeric(&qint(2), &r(4, 1), &z, &z).unwrap(), r(17, 4));
        assert_eq!(
            eval_numeric(&Scalar::zero(), &r(3, 1), &z, &z).unwrap(),
            r(0, 1)
        );
        let s = Scalar::one() / (Scalar::q() - Scalar::one());
        assert_eq!(
            eval_numeric(&s, &r(1, 1), &z, &z),
            Err(Error::DenominatorVanishes)
        );
        // Odd t powers need a rational square root.
        assert_eq!(
            eval_numeric(&Scalar::t(), &r(9, 4), &z, &z).unwrap(),
            r(3, 2)
        );
        assert!(matches!(
            eval_numeric(&Scalar::t(), &r(2, 1), &z, &z),
            Err(Error::NonRationalRoot(_))
        ));
        // Even powers evaluate directly in q.
        assert_eq!(
            eval_numeric(&Scalar::q(), &r(2, 1), &z, &z).unwrap(),
            r(2, 1)
        );
        let zw = parse_scalar("z*w + t^-2").unwrap();
        assert_eq!(
            eval_numeric(&zw, &r(2, 1), &r(3, 1), &r(5, 1)).unwrap(),
            r(31, 2)
        );
    }

    #[test]
    fn printing_reparses() {
        for text in [
            "(q - q^-1)^-2 * z",
            "t^3 - 2/3*w/(z + t)",
            "-(w^2 - 1)/(q*w)",
            "7",
        ] {
            let s = parse_scalar(text).unwrap();
            assert_eq!(parse_scalar(&s.to_string()).unwrap(), s, "{text} -> {s}");
        }
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        // Random (a + b t + c z w) / (d + e t^2 + f w) with small integer entries.
        (
            -3i64..=3,
            -3i64..=3,
            -3i64..=3,
            1i64..=3,
            -2i64..=2,
            -2i64..=2,
        )
            .prop_map(|(a, b, c, d, e, f)| {
                let num = Scalar::from_int(a)
                    + Scalar::from_int(b) * Scalar::t()
                    + Scalar::from_int(c) * Scalar::z() * Scalar::w();
                let den = Scalar::from_int(d)
                    + Scalar::from_int(e) * Scalar::q()
                    + Scalar::from_int(f) * Scalar::w();
                num / den
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn normalize_is_idempotent(a in small_scalar(), b in small_scalar()) {
            let s = &a + &b;
            prop_assert_eq!(s.normalize(), s.clone());
            prop_assert_eq!(s.normalize().normalize(), s.normalize());
        }

        #[test]
        fn eval_is_a_ring_map(a in small_scalar(), b in small_scalar()) {
            let vals = [r(3, 2), r(5, 7), r(-2, 3), r(0, 1)];
            if let (Ok(x), Ok(y)) = (a.eval_at(&vals), b.eval_at(&vals)) {
                prop_assert_eq!((&a * &b).eval_at(&vals).unwrap(), &x * &y);
                prop_assert_eq!((&a + &b).eval_at(&vals).unwrap(), &x + &y);
            }
        }
    }
}
