//! Verma modules, the modules `B_z` and `B~_z`, and simple quotients.
//!
//! Verma actions are not hand-coded: the image of `Y^k F^l v` under a
//! generator is the PBW normal form of `g Y^k F^l`, evaluated with
//! `E v = X v = 0`, `K v = lambda v`, `Z v = z v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::SparseVec;
use crate::pbw::{Generator, PbwElement, PbwMono};
use crate::scalars::{qint, Scalar, Weight};
use crate::wmod::{
    quotient, singular_vectors, submodule_generated, GradedVec, GradedWeightModule, ModuleShape,
};

/// Evaluates a normal-form element on a highest weight vector of weight
/// `lambda` and central charge `z`; returns `(k, l) -> coefficient` of `Y^k F^l v`.
fn eval_on_top(
    u: &PbwElement,
    lambda: &Scalar,
    z: &Scalar,
    heis_zero: bool,
) -> Vec<((u32, u32), Scalar)> {
    let mut out = Vec::new();
    for (m, c) in u.terms() {
        if m.x > 0 || m.e > 0 || (heis_zero && (m.y > 0 || m.z > 0)) {
            continue;
        }
        let kc = lambda.pow(m.k as i64).expect("weights are nonzero");
        let zc = z.pow(m.z as i64).expect("nonnegative power");
        out.push(((m.y, m.f), c * &kc * zc));
    }
    out
}

fn verma_labels(dims: &[usize], sl2: bool) -> Vec<Vec<String>> {
    dims.iter()
        .enumerate()
        .map(|(n, &d)| {
            (0..d)
                .map(|l| {
                    let k = if sl2 { 0 } else { n - 2 * l };
                    let l = if sl2 { n / 2 } else { l };
                    let mut s = String::new();
                    if k > 0 {
                        s.push_str(&if k == 1 {
                            "Y".to_string()
                        } else {
                            format!("Y^{k}")
                        });
                    }
                    if l > 0 {
                        s.push_str(&if l == 1 {
                            "F".to_string()
                        } else {
                            format!("F^{l}")
                        });
                    }
                    s.push('v');
                    s
                })
                .collect()
        })
        .collect()
}

/// The Verma module `Delta(lambda, z)` up to depth `depth`.
///
/// Depth `n` has basis `Y^{n-2l} F^l v`, `l = 0..=n/2`, indexed by `l`.
pub fn build_verma(lambda: &Weight, z: &Scalar, depth: usize) -> GradedWeightModule {
    build_verma_with(lambda, z, depth, Strategy::default())
}

pub fn build_verma_with(
    lambda: &Weight,
    z: &Scalar,
    depth: usize,
    strategy: Strategy,
) -> GradedWeightModule {
    let dims: Vec<usize> = (0..=depth).map(|n| n / 2 + 1).collect();
    let shape = ModuleShape {
        top_weight: lambda.clone(),
        central_charge: z.clone(),
        dims: dims.clone(),
        finite: false,
    };
    let lam = lambda.value().clone();
    let m = GradedWeightModule::from_fn(shape, strategy, |g, n, l| {
        let k = (n - 2 * l) as u32;
        let basis = PbwElement::monomial(
            PbwMono {
                y: k,
                f: l as u32,
                ..PbwMono::one()
            },
            Scalar::one(),
        );
        let image = basis.left_mul_gen(g);
        SparseVec::from_pairs(
            eval_on_top(&image, &lam, z, false)
                .into_iter()
                .map(|((_, b), c)| (b as usize, c)),
        )
    });
    m.with_labels(verma_labels(&dims, false))
}

/// The U_q(sl2) Verma module `Delta_sl2(mu)` as a U_q(s)-module with
/// `X`, `Y`, `Z` acting by zero. `F^l v` sits at depth `2l`.
pub fn build_verma_sl2(mu: &Weight, depth: usize) -> GradedWeightModule {
    let dims: Vec<usize> = (0..=depth).map(|n| usize::from(n % 2 == 0)).collect();
    let shape = ModuleShape {
        top_weight: mu.clone(),
        central_charge: Scalar::zero(),
        dims: dims.clone(),
        finite: false,
    };
    let m = GradedWeightModule::from_fn(shape, Strategy::Sequential, |g, n, _| {
        if matches!(g, Generator::X | Generator::Y) {
            return SparseVec::new();
        }
        let basis = PbwElement::monomial(
            PbwMono {
                f: (n / 2) as u32,
                ..PbwMono::one()
            },
            Scalar::one(),
        );
        let image = basis.left_mul_gen(g);
        SparseVec::from_pairs(
            eval_on_top(&image, mu.value(), &Scalar::zero(), true)
                .into_iter()
                .map(|(_, c)| (0, c)),
        )
    });
    m.with_labels(verma_labels(&dims, true))
}

/// The finite-dimensional simple module `L_sl2(sign * q^d)`, `X = Y = Z = 0`.
pub fn build_simple_sl2(sign: i64, d: usize) -> GradedWeightModule {
    let depth = 2 * d;
    let dims: Vec<usize> = (0..=depth).map(|n| usize::from(n % 2 == 0)).collect();
    let mu = Weight::signed_half_power(sign, 2 * d as i64);
    let shape = ModuleShape {
        top_weight: mu.clone(),
        central_charge: Scalar::zero(),
        dims: dims.clone(),
        finite: true,
    };
    let m = GradedWeightModule::from_fn(shape, Strategy::Sequential, |g, n, _| {
        let s = (n / 2) as i64;
        match g {
            Generator::F => SparseVec::unit(0),
            // E F^s v = sign [s][d+1-s] F^{s-1} v
            Generator::E => SparseVec::from_pairs([(
                0,
                qint(s) * qint(d as i64 + 1 - s) * Scalar::from_int(sign.signum()),
            )]),
            _ => SparseVec::new(),
        }
    });
    m.with_labels(verma_labels(&dims, true))
}

/// The quantum Weyl algebra module `B_z = H_q / (H_q (Z - z) + H_q X)`.
#[derive(Clone, Debug)]
pub struct BModule {
    pub z: Scalar,
    pub depth: usize,
}

impl BModule {
    /// `X v_i = x_coeff(i) v_{i-1}` with `x_coeff(i) = -z (q^i - 1)/(q - 1)`.
    pub fn x_coeff(&self, i: usize) -> Scalar {
        let i = i as i64;
        -(&self.z * &((Scalar::q_pow(i) - Scalar::one()) / (Scalar::q() - Scalar::one())))
    }

    /// Checks `qYX - XY = Z` on `v_0 .. v_{depth-1}`; returns the first failing index.
    pub fn check_weyl_relation(&self) -> Option<usize> {
        // qYX v_i - XY v_i = (q x(i) - x(i+1)) v_i
        (0..self.depth).find(|&i| Scalar::q() * self.x_coeff(i) - self.x_coeff(i + 1) != self.z)
    }
}

pub fn build_b(z: &Scalar, depth: usize) -> BModule {
    BModule {
        z: z.clone(),
        depth,
    }
}

/// Coefficient of `v_{i-2}` in `E v_i` on `B~_z`.
pub fn b_tilde_e_coeff(z: &Scalar, i: usize) -> Scalar {
    let i = i as i64;
    let q = Scalar::q_pow;
    let one = Scalar::one;
    let num = -(z * &(q(i) - one()) * (q(i - 1) - one()));
    let den = q(i - 2) * (q(2) - one()) * (q(1) - one());
    num / den
}

/// Coefficient of `v_{i+2}` in `F v_i` on `B~_z`.
pub fn b_tilde_f_coeff(z: &Scalar) -> Result<Scalar> {
    if z.is_zero() {
        return Err(Error::ZeroCentralCharge);
    }
    Ok(Scalar::t() / (z * &(Scalar::q() + Scalar::one())))
}

/// The U_q(s)-module `B~_z`: `v_i` at depth `i`, top weight `q^{-1/2}`.
pub fn build_b_tilde(z: &Scalar, depth: usize) -> Result<GradedWeightModule> {
    let f = b_tilde_f_coeff(z)?;
    let b = build_b(z, depth);
    let dims = vec![1; depth + 1];
    let shape = ModuleShape {
        top_weight: Weight::q_half(-1),
        central_charge: z.clone(),
        dims,
        finite: false,
    };
    let m = GradedWeightModule::from_fn(shape, Strategy::Sequential, |g, i, _| match g {
        Generator::X => SparseVec::from_pairs([(0, b.x_coeff(i))]),
        Generator::Y => SparseVec::unit(0),
        Generator::F => SparseVec::from_pairs([(0, f.clone())]),
        Generator::E => SparseVec::from_pairs([(0, b_tilde_e_coeff(z, i))]),
        _ => SparseVec::new(),
    });
    let labels = (0..=depth).map(|i| vec![format!("v{i}")]).collect();
    Ok(m.with_labels(labels))
}

/// Quotient by the submodule generated by all singular vectors, repeated
/// until no singular vectors remain.
pub fn simple_quotient(m: &GradedWeightModule) -> GradedWeightModule {
    let mut cur = m.clone();
    for _ in 0..=m.depth() {
        let svs = singular_vectors(&cur);
        if svs.is_empty() {
            break;
        }
        let gens: Vec<GradedVec> = svs
            .into_iter()
            .map(|s| GradedVec::new(s.depth as i64, s.vector))
            .collect();
        let sub =
            submodule_generated(&cur, &gens).expect("singular vectors are inside the truncation");
        cur = quotient(&cur, &sub);
    }
    cur
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLine {
    pub depth: usize,
    pub weight: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub reducible: bool,
    pub singular: Vec<SingularLine>,
}

/// Searches `Delta(lambda, z)` for singular vectors up to depth `depth`.
pub fn reducibility_verdict(lambda: &Weight, z: &Scalar, depth: usize) -> Result<Verdict> {
    if z.is_zero() {
        return Err(Error::ZeroCentralCharge);
    }
    let m = build_verma(lambda, z, depth);
    let mut singular: Vec<SingularLine> = Vec::new();
    for s in singular_vectors(&m) {
        match singular.last_mut() {
            Some(last) if last.depth == s.depth => last.multiplicity += 1,
            _ => singular.push(SingularLine {
                depth: s.depth,
                weight: s.weight.to_string(),
                multiplicity: 1,
            }),
        }
    }
    Ok(Verdict {
        reducible: !singular.is_empty(),
        singular,
    })
}
