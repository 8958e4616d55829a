//! The Casimir of U_q(sl2), the central element `C~` of U_q(s), their
//! highest weight eigenvalues, and the block classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pbw::{parse_expr, Generator, PbwElement};
use crate::scalars::{Scalar, Var, Weight};

/// A distinguished element of the algebra, stored in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub pbw_form: PbwElement,
}

impl CentralElement {
    /// Generators whose commutator with this element does not vanish.
    pub fn non_commuting(&self, gens: &[Generator]) -> Vec<Generator> {
        gens.iter()
            .copied()
            .filter(|&g| {
                let gx = PbwElement::generator(g);
                !self
                    .pbw_form
                    .mul(&gx)
                    .sub(&gx.mul(&self.pbw_form))
                    .is_zero()
            })
            .collect()
    }
}

const CASIMIR: &str = "F*E + (q*K + q^-1*K^-1)/(q - q^-1)^2";

/// `C = FE + (qK + q^-1 K^-1)/(q - q^-1)^2`.
pub fn casimir_c() -> CentralElement {
    CentralElement {
        pbw_form: parse_expr(CASIMIR).expect("built-in expression"),
    }
}

/// `C~ = Z((1 + q^-1) C + K^-1/(q^2 - 1)) + X^2 F - Y^2 E K^-1 + XY(q^-1 FE - q EF)`.
pub fn tilde_c() -> CentralElement {
    let text = format!(
        "Z*((1 + q^-1)*({CASIMIR}) + K^-1/(q^2 - 1)) + X^2*F - Y^2*E*K^-1 + X*Y*(q^-1*F*E - q*E*F)"
    );
    CentralElement {
        pbw_form: parse_expr(&text).expect("built-in expression"),
    }
}

fn q_minus_qinv_sq() -> Scalar {
    let d = Scalar::q() - Scalar::q_pow(-1);
    &d * &d
}

/// `c_lambda = (q lambda + q^-1 lambda^-1)/(q - q^-1)^2`, the Casimir eigenvalue on `L_sl2(lambda)`.
pub fn c_lambda(lambda: &Weight) -> Scalar {
    let l = lambda.value();
    let inv = lambda.inv();
    (Scalar::q() * l + Scalar::q_pow(-1) * inv.value()) / q_minus_qinv_sq()
}

fn tilde_c_of(l: &Scalar, z: &Scalar) -> Scalar {
    let a = Scalar::q() + Scalar::q_pow(2);
    let b = Scalar::q_pow(-1) + Scalar::q_pow(-2);
    let linv = l.inv().expect("nonzero weight");
    z * &(a * l + b * linv) / q_minus_qinv_sq()
}

/// `c~_lambda = z/(q - q^-1)^2 ((q + q^2) lambda + (q^-1 + q^-2) lambda^-1)`.
pub fn hw_eigenvalue(lambda: &Weight, z: &Scalar) -> Scalar {
    tilde_c_of(lambda.value(), z)
}

/// Whether `lambda` and `lambda q^-k` are tied by `C~`.
///
/// Uses the divided difference `(c~(lambda) - c~(u))/(lambda - u)` at
/// `u = lambda q^-k`; for `k >= 1` it vanishes exactly when the two
/// eigenvalues agree, and at `k = 0` it detects the double root.
pub fn tie_partner(lambda: &Weight, k: i64) -> bool {
    let z = Scalar::z();
    let u = Scalar::var(Var::U);
    let l = lambda.value();
    let diff = (tilde_c_of(l, &z) - tilde_c_of(&u, &z)) / (l - &u);
    let at = diff
        .substitute(Var::U, &(l * &Scalar::q_pow(-k)))
        .expect("no pole at u = lambda q^-k");
    at.is_zero()
}

/// A block `O[xi, c~, z]`, with `xi` given by a representative.
#[derive(Clone, Debug)]
pub struct BlockLabel {
    pub coset_rep: Weight,
    pub c_tilde: Scalar,
    pub z: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    SemisimpleOneSimple,
    TwoSimplesQuiverAB0,
    TwoSimplesSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimpleKind {
    Verma,
    SimpleQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleObject {
    pub weight: Weight,
    pub kind: SimpleKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDescriptor {
    pub kind: BlockKind,
    pub simples: Vec<SimpleObject>,
    pub warnings: Vec<String>,
}

/// How far from the representative the classifier searches for a weight with the given eigenvalue.
const COSET_SEARCH: i64 = 64;

/// Weights `rep * q^j`, `|j| <= COSET_SEARCH`, whose eigenvalue is `c_tilde`.
fn realize(label: &BlockLabel) -> Vec<Weight> {
    (-COSET_SEARCH..=COSET_SEARCH)
        .map(|j| label.coset_rep.shift_q(j))
        .filter(|l| hw_eigenvalue(l, &label.z) == label.c_tilde)
        .collect()
}

pub const INTEGRAL_PARTNER_WARNING: &str = "integral block: the partner simple is Delta(q^(-n-3)) as forced by the eigenvalue tie law; the block proposition prints Delta(q^(2n+3)), which does not share the eigenvalue";

pub fn classify_block(label: &BlockLabel) -> Result<BlockDescriptor> {
    if label.z.is_zero() {
        return Err(Error::ZeroCentralCharge);
    }
    let found = realize(label);
    let Some(lambda) = found
        .iter()
        .max_by_key(|w| w.as_monomial().map(|m| m.t_exp))
        .cloned()
    else {
        return Err(Error::UnrealizableCTilde(label.c_tilde.to_string()));
    };
    let verma = |weight: Weight| SimpleObject {
        weight,
        kind: SimpleKind::Verma,
    };
    let mono = lambda.as_monomial().filter(|m| m.is_signed_q_power());
    let Some(m) = mono else {
        return Ok(BlockDescriptor {
            kind: BlockKind::SemisimpleOneSimple,
            simples: vec![verma(lambda)],
            warnings: vec![],
        });
    };
    let sign = m.sign();
    // Tied weights multiply to q^-3, i.e. t-exponents sum to -6.
    let partner = Weight::signed_half_power(sign, -6 - m.t_exp);
    if m.t_exp % 2 != 0 {
        if m.t_exp == -3 {
            return Ok(BlockDescriptor {
                kind: BlockKind::SemisimpleOneSimple,
                simples: vec![verma(lambda)],
                warnings: vec![],
            });
        }
        return Ok(BlockDescriptor {
            kind: BlockKind::TwoSimplesQuiverAB0,
            simples: vec![
                verma(partner),
                SimpleObject {
                    weight: lambda,
                    kind: SimpleKind::SimpleQuotient,
                },
            ],
            warnings: vec![],
        });
    }
    Ok(BlockDescriptor {
        kind: BlockKind::TwoSimplesSplit,
        simples: vec![verma(lambda), verma(partner)],
        warnings: vec![INTEGRAL_PARTNER_WARNING.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;
    use crate::verma::build_verma;
    use crate::wmod::{act, GradedVec};

    #[test]
    fn casimir_is_central_in_sl2() {
        assert!(casimir_c().non_commuting(&Generator::SL2).is_empty());
        // but not in the whole algebra
        assert!(!casimir_c().non_commuting(&[Generator::X]).is_empty());
    }

    #[test]
    fn tilde_c_is_central() {
        assert!(tilde_c().non_commuting(&Generator::ALL).is_empty());
    }

    #[test]
    fn eigenvalue_matches_action() {
        let m = build_verma(&Weight::generic(), &Scalar::z(), 4);
        let out = act(&m, &tilde_c().pbw_form, &GradedVec::basis(0, 0)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(
            out[&0].get(0),
            hw_eigenvalue(&Weight::generic(), &Scalar::z())
        );
    }

    #[test]
    fn z_free_part_kills_top_at_zero_charge() {
        let m = build_verma(&Weight::generic(), &Scalar::zero(), 4);
        let out = act(&m, &tilde_c().pbw_form, &GradedVec::basis(0, 0)).unwrap();
        assert!(out.is_empty());
        assert!(hw_eigenvalue(&Weight::generic(), &Scalar::zero()).is_zero());
    }

    #[test]
    fn eigenvalue_at_minus_three_halves() {
        let got = hw_eigenvalue(&Weight::q_half(-3), &Scalar::z());
        let want = parse_scalar("2*z*(q^(1/2) + q^(-1/2))/(q - q^-1)^2").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn tie_examples() {
        assert!(tie_partner(&Weight::q_half(1), 4));
        assert!(tie_partner(&Weight::q_half(-3), 0));
        assert!(!tie_partner(&Weight::q_half(1), 0));
        assert!(!tie_partner(&Weight::generic(), 2));
    }

    #[test]
    fn c_lambda_matches_casimir_on_sl2_verma() {
        let mu = Weight::q_half(3);
        let d = crate::verma::build_verma_sl2(&mu, 4);
        let out = act(&d, &casimir_c().pbw_form, &GradedVec::basis(0, 0)).unwrap();
        assert_eq!(out[&0].get(0), c_lambda(&mu));
    }

    fn label(l: Weight) -> BlockLabel {
        BlockLabel {
            c_tilde: hw_eigenvalue(&l, &Scalar::z()),
            coset_rep: l,
            z: Scalar::z(),
        }
    }

    #[test]
    fn blocks() {
        let b = classify_block(&label(Weight::q_half(-3))).unwrap();
        assert_eq!(b.kind, BlockKind::SemisimpleOneSimple);
        let b = classify_block(&label(Weight::q_half(3))).unwrap();
        assert_eq!(b.kind, BlockKind::TwoSimplesQuiverAB0);
        assert_eq!(
            b.simples[0],
            SimpleObject {
                weight: Weight::q_half(-9),
                kind: SimpleKind::Verma
            }
        );
        assert_eq!(b.simples[1].kind, SimpleKind::SimpleQuotient);
        // The representative need not be the top of the pair.
        let mut l = label(Weight::q_half(-9));
        l.coset_rep = Weight::q_half(1);
        assert_eq!(
            classify_block(&l).unwrap().simples[1].weight,
            Weight::q_half(3)
        );
        let b = classify_block(&label(Weight::q_half(4))).unwrap();
        assert_eq!(b.kind, BlockKind::TwoSimplesSplit);
        assert_eq!(b.simples[1].weight, Weight::q_half(-10));
        assert_eq!(b.warnings.len(), 1);
        let b = classify_block(&label(Weight::generic())).unwrap();
        assert_eq!(
            (b.kind, b.simples.len()),
            (BlockKind::SemisimpleOneSimple, 1)
        );
        let mut bad = label(Weight::q_half(1));
        bad.c_tilde = Scalar::one();
        assert!(matches!(
            classify_block(&bad),
            Err(Error::UnrealizableCTilde(_))
        ));
        let mut zero = label(Weight::q_half(1));
        zero.z = Scalar::zero();
        assert_eq!(classify_block(&zero), Err(Error::ZeroCentralCharge));
    }
}
