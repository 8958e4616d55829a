//! Finite-dimensional modules with `Z = 0` and support in `q^Z`, and their
//! equivalence with representations of the quiver `0 <-> 1 <-> 2 <-> ...`.
//!
//! Such a module is a [`GradedWeightModule`] with `finite = true` and top
//! weight `q^M`; depth `n` is the `K`-eigenspace of eigenvalue `q^(M - n)`.

mod formal;
mod functors;
mod quiver;

pub use formal::{appendix_formal_suite, FormalCheck};
pub use functors::{
    functor_f, functor_f_morphism, functor_g, functor_g_morphism, hw_bases, multiplicities,
    natural_iso, roundtrip_iso, RoundTrip,
};
pub use quiver::{
    find_isomorphism, is_morphism, morphisms, quiver_relation_check, random_morphism, random_rep,
    random_reps, Field, QuiverCheck, QuiverRelationResult, QuiverRep, QuiverRepJson, Witness,
};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::pbw::Generator;
use crate::scalars::{qint, Scalar};
use crate::tensorfun::{sl2_tensor, TensorModule};
use crate::verma::build_simple_sl2;
use crate::wmod::{check_relations, GradedMap, GradedVec, GradedWeightModule};

/// `L(i)`, with basis `F^s v_i` at depth `2s`.
pub fn build_l(i: usize) -> GradedWeightModule {
    build_simple_sl2(1, i)
}

/// The `K`-exponent `m` (eigenvalue `q^m`) at depth `n` of a module with top weight `q^M`.
pub fn k_exponent(m: &GradedWeightModule, n: usize) -> Option<i64> {
    let top = m.top_weight().as_monomial()?;
    (top.is_signed_q_power() && top.sign() > 0 && top.t_exp % 2 == 0)
        .then(|| top.t_exp / 2 - n as i64)
}

/// A finite-dimensional module of type 1 on which `Z` acts by zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AModule {
    module: GradedWeightModule,
}

impl AModule {
    /// Validates the module: finite, top weight `q^M`, `Z = 0`, all relations.
    pub fn new(module: GradedWeightModule) -> Result<AModule> {
        if !module.is_finite() {
            return Err(Error::InvalidModule(
                "module must be finite-dimensional".into(),
            ));
        }
        if k_exponent(&module, 0).is_none() {
            return Err(Error::InvalidModule(
                "top weight must be q^M with M an integer".into(),
            ));
        }
        if !module.central_charge().is_zero() {
            return Err(Error::InvalidModule("Z must act by zero".into()));
        }
        let report = check_relations(&module);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidModule(format!("relation {} fails", bad.name)));
        }
        Ok(AModule { module })
    }

    pub(crate) fn new_unchecked(module: GradedWeightModule) -> AModule {
        AModule { module }
    }

    pub fn module(&self) -> &GradedWeightModule {
        &self.module
    }

    pub fn into_module(self) -> GradedWeightModule {
        self.module
    }

    /// `M` for top weight `q^M`.
    pub fn top_exponent(&self) -> i64 {
        k_exponent(&self.module, 0).expect("validated top weight")
    }

    /// The depth holding `K`-exponent `m`, if materialized.
    pub fn depth_of(&self, m: i64) -> Option<usize> {
        let n = self.top_exponent() - m;
        (0..=self.module.depth() as i64)
            .contains(&n)
            .then_some(n as usize)
    }
}

/// The map `F^s v -> F^s w` out of `L(j)` for a vector `w` of weight `q^j`
/// killed by `E` at depth `d` of `dst`.
pub fn string_map(j: usize, dst: &GradedWeightModule, d: usize, w: &SparseVec) -> GradedMap {
    let src = build_l(j);
    let mut cur = GradedVec::new(d as i64, w.clone());
    let blocks = (0..=src.depth())
        .map(|n| {
            let t = n as i64 + d as i64;
            let rows = dst.dim(t);
            let mut b = Matrix::zeros(rows, src.dims()[n]);
            if n % 2 == 0 {
                for (r, x) in cur.vec.iter() {
                    b.set(r, 0, x.clone());
                }
                if n < src.depth() {
                    cur = dst.apply_gen(Generator::F, &cur).expect("finite target");
                }
            }
            Some(b)
        })
        .collect();
    GradedMap {
        shift: d as i64,
        blocks,
    }
}

/// The two embeddings `t_{i+1}: L(i+1) -> L(1)(x)L(i)` and, for `i >= 1`,
/// `t'_{i-1}: L(i-1) -> L(1)(x)L(i)`, determined by
/// `v_{i+1} -> X(x)v_i` and `v_{i-1} -> [i] Y(x)v_i - q^-1 X(x)F v_i`.
#[derive(Clone, Debug)]
pub struct CgEmbeddings {
    pub tensor: TensorModule,
    pub top: SparseVec,
    pub lower: Option<SparseVec>,
    pub t_up: GradedMap,
    pub t_down: Option<GradedMap>,
}

pub fn cg_embeddings(i: usize) -> CgEmbeddings {
    let tensor = sl2_tensor(&build_l(1), &build_l(i)).expect("finite factors");
    // X is v_1 at depth 0 of L(1), Y = F v_1 at depth 2.
    let top = SparseVec::unit(tensor.index(0, 0, 0, 0));
    let t_up = string_map(i + 1, &tensor.module, 0, &top);
    let (lower, t_down) = if i >= 1 {
        let mut w = SparseVec::new();
        w.add_at(tensor.index(2, 0, 0, 0), &qint(i as i64));
        w.add_at(tensor.index(0, 0, 2, 0), &-Scalar::q_pow(-1));
        let map = string_map(i - 1, &tensor.module, 2, &w);
        (Some(w), Some(map))
    } else {
        (None, None)
    };
    CgEmbeddings {
        tensor,
        top,
        lower,
        t_up,
        t_down,
    }
}

/// Images of all basis vectors under `f`, in global coordinates of `dst`.
pub fn image_vectors(
    f: &GradedMap,
    src: &GradedWeightModule,
    dst: &GradedWeightModule,
) -> Vec<SparseVec> {
    let offsets: Vec<usize> = dst
        .dims()
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut out = Vec::new();
    for n in 0..=src.depth() {
        for j in 0..src.dims()[n] {
            let img = f
                .apply(&GradedVec::basis(n, j))
                .expect("materialized block");
            if img.depth < 0 || img.is_zero() {
                continue;
            }
            let o = offsets[img.depth as usize];
            out.push(SparseVec::from_pairs(
                img.vec.iter().map(|(r, x)| (o + r, x.clone())),
            ));
        }
    }
    out
}

/// `tau(theta): L(1)(x)L(i) -> V`, `(aX + bY)(x)v -> (aX + bY) theta(v)`.
pub fn tau(theta: &GradedMap, i: usize, v: &AModule) -> GradedMap {
    let tensor = sl2_tensor(&build_l(1), &build_l(i)).expect("finite factors");
    let m = &tensor.module;
    let target = v.module();
    let shift = theta.shift - 1;
    let blocks = (0..=m.depth())
        .map(|n| {
            let t = n as i64 + shift;
            let mut b = Matrix::zeros(target.dim(t), m.dims()[n]);
            for idx in 0..m.dims()[n] {
                let (n1, _, n2, c) = tensor.split(n, idx);
                let g = if n1 == 0 { Generator::X } else { Generator::Y };
                let img = theta
                    .apply(&GradedVec::basis(n2, c))
                    .and_then(|w| target.apply_gen(g, &w))
                    .expect("finite modules");
                for (r, x) in img.vec.iter() {
                    b.set(r, idx, x.clone());
                }
            }
            Some(b)
        })
        .collect();
    GradedMap { shift, blocks }
}

/// The two highest weight vectors of weight `q^i` in `L(1)(x)L(1)(x)L(i)`:
/// `[i+1] Y(x)X(x)v - q^-1 X(x)X(x)Fv - q^(-i-1) X(x)Y(x)v` and
/// `[i] X(x)Y(x)v - q^-1 X(x)X(x)Fv`.
pub fn triple_tensor_vectors(i: usize) -> (TensorModule, [SparseVec; 2]) {
    let l1 = build_l(1);
    let inner = sl2_tensor(&l1, &l1).expect("finite factors");
    let outer = sl2_tensor(&inner.module, &build_l(i)).expect("finite factors");
    // x(x)y(x)F^s v with x, y in {0: X, 2: Y}.
    let at = |x: usize, y: usize, s: usize| outer.index(x + y, inner.index(x, 0, y, 0), 2 * s, 0);
    let qi = |k: i64| qint(k);
    let mut first = SparseVec::new();
    first.add_at(at(2, 0, 0), &qi(i as i64 + 1));
    first.add_at(at(0, 0, 1), &-Scalar::q_pow(-1));
    first.add_at(at(0, 2, 0), &-Scalar::q_pow(-(i as i64) - 1));
    let mut second = SparseVec::new();
    second.add_at(at(0, 2, 0), &qi(i as i64));
    second.add_at(at(0, 0, 1), &-Scalar::q_pow(-1));
    (outer, [first, second])
}

#[cfg(test)]
mod tests;
