//! Multivariate polynomial gcd by recursive primitive remainder sequences.
//!
//! The polynomial is viewed as univariate in one chosen variable with
//! coefficients in the polynomial ring of the remaining ones; contents are
//! computed recursively. Results are monic (leading coefficient one).

use super::poly::{Mono, Poly, Var};

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Pull out the common monomial factor first.
    let ma = a.min_mono();
    let mb = b.min_mono();
    let common = ma.min(mb);
    let a1 = if ma.is_one() {
        a.clone()
    } else {
        a.div_mono(ma)
    };
    let b1 = if mb.is_one() {
        b.clone()
    } else {
        b.div_mono(mb)
    };
    let g = gcd_no_monomial(&a1, &b1);
    if common.is_one() {
        g
    } else {
        g.mul_mono(common)
    }
}

/// Gcd of polynomials neither of which has a monomial factor.
fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() || a.len() == 1 || b.len() == 1 {
        return Poly::one();
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    if am.div_exact(&bm).is_some() {
        return bm;
    }
    if bm.div_exact(&am).is_some() {
        return am;
    }
    gcd_rec(&am, &bm)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // A variable present in only one side reduces to a content computation.
    for v in Var::ALL {
        let in_a = a.contains_var(v);
        let in_b = b.contains_var(v);
        if in_a && !in_b {
            return gcd_with_list(content_terms(a, v), b);
        }
        if in_b && !in_a {
            return gcd_with_list(content_terms(b, v), a);
        }
    }
    // Main variable: the shared one of smallest degree.
    let v = Var::ALL
        .into_iter()
        .filter(|&v| a.contains_var(v))
        .min_by_key(|&v| a.degree(v).max(b.degree(v)))
        .expect("non-constant polynomial has a variable");
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = prs(pa, pb, v);
    c.mul(&g).monic()
}

fn content_terms(p: &Poly, v: Var) -> Vec<Poly> {
    p.coefficients_in(v).into_iter().map(|(_, c)| c).collect()
}

/// Gcd of `b` with all polynomials in `list`.
fn gcd_with_list(list: Vec<Poly>, b: &Poly) -> Poly {
    let mut g = b.monic();
    // Try short coefficients first: they shrink the gcd fastest.
    let mut list = list;
    list.sort_by_key(|p| p.len());
    for c in list {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

/// Content with respect to `v`: gcd of the coefficients.
pub fn content(p: &Poly, v: Var) -> Poly {
    let mut coeffs = content_terms(p, v);
    coeffs.sort_by_key(|c| c.len());
    let mut it = coeffs.into_iter();
    let mut g = match it.next() {
        Some(c) => c.monic(),
        None => return Poly::zero(),
    };
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

fn primitive_part(p: &Poly, v: Var) -> Poly {
    let c = content(p, v);
    if c.is_one() {
        p.monic()
    } else {
        p.div_exact(&c).expect("content divides").monic()
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `v`, up to a unit.
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (db, lb) = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = r.leading_coeff_in(v);
        if dr < db {
            break;
        }
        let shift = Mono::var(v, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr.mul_mono(shift)));
    }
    r
}

fn prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return primitive_part(&a, v);
        }
        if b.degree(v) == 0 {
            return Poly::one();
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly::Rational;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }
    fn c(n: i64) -> Poly {
        Poly::from_int(n)
    }

    #[test]
    fn univariate_gcd() {
        let t = v(Var::T);
        let a = t.pow(4).sub(&c(1)); // (t-1)(t+1)(t^2+1)
        let b = t.pow(2).sub(&c(1)).mul(&t.add(&c(3)));
        assert_eq!(gcd(&a, &b), t.pow(2).sub(&c(1)));
    }

    #[test]
    fn multivariate_gcd_recovers_common_factor() {
        let t = v(Var::T);
        let z = v(Var::Z);
        let w = v(Var::W);
        let common = t.mul(&z).add(&w.pow(2)).sub(&c(2));
        let a = common.mul(&t.add(&z)).mul(&w);
        let b = common.mul(&z.pow(3).sub(&t)).mul(&t.pow(2));
        let g = gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn coprime_and_monomial_cases() {
        let t = v(Var::T);
        let z = v(Var::Z);
        assert!(gcd(&t.add(&c(1)), &z.add(&c(1))).is_one());
        assert_eq!(
            gcd(&t.pow(3).mul(&z), &t.pow(2).mul(&z.add(&c(1)))),
            t.pow(2)
        );
        let half = Poly::constant(Rational::new(1.into(), 2.into()));
        assert!(gcd(&half, &t).is_one());
        assert_eq!(
            gcd(&Poly::zero(), &t.scale(&Rational::from_integer(3.into()))),
            t
        );
    }
}
