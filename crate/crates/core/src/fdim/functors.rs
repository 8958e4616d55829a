//! The functors between quiver representations and modules.
//!
//! `G(rep) = (+)_i rep_i (x) L(i)` with `X`, `Y` acting through the arrows;
//! `F(V)_i` is the space of highest weight vectors of weight `q^i` in `V`,
//! which is `Hom_sl2(L(i), V)` by complete reducibility.

use std::collections::BTreeMap;

use serde::Serialize;

use super::quiver::{find_isomorphism, is_morphism, quiver_relation_check, Field, QuiverRep};
use super::{build_l, AModule};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::{coordinates, Matrix, SparseVec};
use crate::pbw::Generator;
use crate::scalars::{qint, Scalar, Weight};
use crate::wmod::{
    find_intertwiners_with, joint_kernel, GradedMap, GradedVec, GradedWeightModule, ModuleShape,
};

/// Basis bookkeeping for `G(rep)`: depth `n` holds `K`-exponent `m = M - n`
/// and is spanned by `theta_{i,k} (x) F^s v_i` with `i - 2s = m`, ordered by
/// `i`, then `k`.
struct GLayout {
    top: i64,
    offsets: Vec<BTreeMap<usize, usize>>,
    dims: Vec<usize>,
}

impl GLayout {
    fn new(rep: &QuiverRep) -> GLayout {
        let top = rep.top_vertex().unwrap_or(0) as i64;
        let depth = 2 * top as usize;
        let mut offsets = vec![BTreeMap::new(); depth + 1];
        let mut dims = vec![0; depth + 1];
        for (n, (offs, dim)) in offsets.iter_mut().zip(dims.iter_mut()).enumerate() {
            let m = top - n as i64;
            for i in (m.unsigned_abs() as usize..=top as usize).step_by(2) {
                if rep.dim(i) > 0 {
                    offs.insert(i, *dim);
                    *dim += rep.dim(i);
                }
            }
        }
        GLayout { top, offsets, dims }
    }

    fn depth_of(&self, i: usize, s: usize) -> usize {
        (self.top - i as i64 + 2 * s as i64) as usize
    }

    fn index(&self, i: usize, s: usize, k: usize) -> Option<(usize, usize)> {
        let n = self.depth_of(i, s);
        self.offsets.get(n)?.get(&i).map(|o| (n, o + k))
    }

    /// `(i, s, k)` of basis vector `j` at depth `n`.
    fn split(&self, n: usize, j: usize) -> (usize, usize, usize) {
        let (&i, &o) = self.offsets[n]
            .iter()
            .rev()
            .find(|(_, &o)| o <= j)
            .expect("index in range");
        let m = self.top - n as i64;
        (i, ((i as i64 - m) / 2) as usize, j - o)
    }
}

fn ratio(num: Scalar, i: usize) -> Scalar {
    num / qint(i as i64 + 1)
}

/// The module `G(rep)`.
pub fn functor_g(rep: &QuiverRep) -> Result<AModule> {
    let check = quiver_relation_check(rep);
    if let Some(bad) = check.results.iter().find(|r| !r.passed) {
        return Err(Error::RelationViolation(bad.name.clone()));
    }
    let lay = GLayout::new(rep);
    let shape = ModuleShape {
        top_weight: Weight::q_half(2 * lay.top),
        central_charge: Scalar::zero(),
        dims: lay.dims.clone(),
        finite: true,
    };
    let push = |out: &mut SparseVec, i: usize, s: usize, k: usize, c: Scalar| {
        if let Some((_, idx)) = lay.index(i, s, k) {
            out.add_at(idx, &c);
        }
    };
    let module = GradedWeightModule::from_fn(shape, Strategy::default(), |g, n, j| {
        let (i, s, k) = lay.split(n, j);
        let mut out = SparseVec::new();
        let (si, ii) = (s as i64, i as i64);
        match g {
            Generator::E if s >= 1 => push(&mut out, i, s - 1, k, qint(si) * qint(ii + 1 - si)),
            Generator::F if s < i => push(&mut out, i, s + 1, k, Scalar::one()),
            Generator::X => {
                let a = rep.a_map(i);
                let c = ratio(Scalar::q_pow(si) * qint(ii + 1 - si), i);
                for r in 0..a.rows() {
                    push(&mut out, i + 1, s, r, &c * a.get(r, k));
                }
                if i >= 1 && s >= 1 {
                    let b = rep.b_map(i - 1);
                    let c = -ratio(Scalar::q_pow(si - ii) * qint(si), i);
                    for r in 0..b.rows() {
                        push(&mut out, i - 1, s - 1, r, &c * b.get(r, k));
                    }
                }
            }
            Generator::Y => {
                if i >= 1 && s < i {
                    let b = rep.b_map(i - 1);
                    let c = ratio(Scalar::q(), i);
                    for r in 0..b.rows() {
                        push(&mut out, i - 1, s, r, &c * b.get(r, k));
                    }
                }
                let a = rep.a_map(i);
                let c = ratio(Scalar::one(), i);
                for r in 0..a.rows() {
                    push(&mut out, i + 1, s + 1, r, &c * a.get(r, k));
                }
            }
            _ => {}
        }
        out
    });
    let labels = (0..lay.dims.len())
        .map(|n| {
            (0..lay.dims[n])
                .map(|j| {
                    let (i, s, k) = lay.split(n, j);
                    format!("t{i}.{k}*F^{s}v{i}")
                })
                .collect()
        })
        .collect();
    Ok(AModule::new_unchecked(module.with_labels(labels)))
}

/// `G` on a morphism `g: r1 -> r2`: `theta (x) u -> g(theta) (x) u`.
pub fn functor_g_morphism(g: &[Matrix], r1: &QuiverRep, r2: &QuiverRep) -> Result<GradedMap> {
    if !is_morphism(g, r1, r2) {
        return Err(Error::InvalidInput(
            "not a morphism of quiver representations".into(),
        ));
    }
    let (l1, l2) = (GLayout::new(r1), GLayout::new(r2));
    let shift = l2.top - l1.top;
    let blocks = (0..l1.dims.len())
        .map(|n| {
            let t = n as i64 + shift;
            let rows = usize::try_from(t)
                .ok()
                .and_then(|t| l2.dims.get(t))
                .copied()
                .unwrap_or(0);
            let mut b = Matrix::zeros(rows, l1.dims[n]);
            for j in 0..l1.dims[n] {
                let (i, s, k) = l1.split(n, j);
                let Some(gi) = g.get(i) else { continue };
                for r in 0..gi.rows() {
                    if let Some((_, row)) = l2.index(i, s, r) {
                        b.set(row, j, gi.get(r, k).clone());
                    }
                }
            }
            Some(b)
        })
        .collect();
    Ok(GradedMap { shift, blocks })
}

/// Bases of the highest weight vectors of weight `q^i`, `i = 0..=M`.
pub fn hw_bases(v: &AModule) -> Vec<Vec<SparseVec>> {
    let top = v.top_exponent();
    (0..=top.max(-1))
        .map(|i| match v.depth_of(i) {
            Some(n) => joint_kernel(v.module(), n, &[Generator::E]).expect("depth in range"),
            None => Vec::new(),
        })
        .collect()
}

fn field_of(mats: &[Matrix]) -> Field {
    let constant = mats
        .iter()
        .flat_map(|m| m.entries())
        .all(|(_, _, x)| x.is_constant());
    if constant {
        Field::Rationals
    } else {
        Field::RationalFunctions
    }
}

fn column_in(basis: &[SparseVec], w: &SparseVec) -> SparseVec {
    let coords = coordinates(basis, w).expect("image is a highest weight vector");
    SparseVec::from_dense(&coords)
}

/// The representation `F(V)`, with `V(a_i)(theta) = X theta` and
/// `V(b_i)(theta) = [i+1] Y theta - q^-1 X F theta`, in the bases of [`hw_bases`].
pub fn functor_f(v: &AModule) -> QuiverRep {
    let h = hw_bases(v);
    let m = v.module();
    let dims: Vec<usize> = h.iter().map(Vec::len).collect();
    let at = |i: usize, w: &SparseVec| {
        GradedVec::new(v.depth_of(i as i64).expect("vertex") as i64, w.clone())
    };
    let apply = |g: Generator, w: &GradedVec| m.apply_gen(g, w).expect("finite module");
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..dims.len() - 1 {
        let cols: Vec<SparseVec> = h[i]
            .iter()
            .map(|w| column_in(&h[i + 1], &apply(Generator::X, &at(i, w)).vec))
            .collect();
        a.push(Matrix::from_columns(dims[i + 1], &cols));
        let cols: Vec<SparseVec> = h[i + 1]
            .iter()
            .map(|w| {
                let w = at(i + 1, w);
                let mut out = apply(Generator::Y, &w).vec.scaled(&qint(i as i64 + 1));
                let xf = apply(Generator::X, &apply(Generator::F, &w));
                out.add_scaled(&xf.vec, &-Scalar::q_pow(-1));
                column_in(&h[i], &out)
            })
            .collect();
        b.push(Matrix::from_columns(dims[i], &cols));
    }
    let field = field_of(&[a.as_slice(), b.as_slice()].concat());
    QuiverRep { dims, a, b, field }.trimmed()
}

/// `F` on a module map `f: V -> W` of the right shift.
pub fn functor_f_morphism(f: &GradedMap, v: &AModule, w: &AModule) -> Result<Vec<Matrix>> {
    if f.shift != w.top_exponent() - v.top_exponent() {
        return Err(Error::InvalidInput("map does not preserve weights".into()));
    }
    let (hv, hw) = (hw_bases(v), hw_bases(w));
    let n = hv.len().max(hw.len());
    Ok((0..n)
        .map(|i| {
            let src = hv.get(i).map_or(&[][..], Vec::as_slice);
            let dst = hw.get(i).map_or(&[][..], Vec::as_slice);
            let cols: Vec<SparseVec> = src
                .iter()
                .map(|x| {
                    let d = v.depth_of(i as i64).expect("vertex") as i64;
                    let img = f.apply(&GradedVec::new(d, x.clone())).expect("finite map");
                    column_in(dst, &img.vec)
                })
                .collect();
            Matrix::from_columns(dst.len(), &cols)
        })
        .collect())
}

/// `dim Hom_sl2(L(i), V)` for each `i`, from the intertwiner equations.
pub fn multiplicities(v: &AModule, strategy: Strategy) -> Vec<usize> {
    let top = v.top_exponent();
    (0..=top.max(-1))
        .map(|i| {
            let l = build_l(i as usize);
            find_intertwiners_with(&l, v.module(), top - i, &Generator::SL2, strategy).len()
        })
        .collect()
}

/// `F(G(rep))` together with an explicit isomorphism `rep -> F(G(rep))`.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    #[serde(skip)]
    pub image: QuiverRep,
    #[serde(skip)]
    pub iso: Vec<Matrix>,
    pub dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub image_relations_hold: bool,
}

pub fn roundtrip_iso(rep: &QuiverRep) -> Result<RoundTrip> {
    let v = functor_g(rep)?;
    let image = functor_f(&v);
    let source = rep.trimmed();
    let iso = find_isomorphism(&source, &image)?;
    Ok(RoundTrip {
        dims: source.dims.clone(),
        image_dims: image.dims.clone(),
        image_relations_hold: quiver_relation_check(&image).all_passed(),
        image,
        iso,
    })
}

/// The natural isomorphism `rep -> F(G(rep))`, `theta -> theta (x) v_i`.
pub fn natural_iso(rep: &QuiverRep) -> Result<Vec<Matrix>> {
    let v = functor_g(rep)?;
    let lay = GLayout::new(rep);
    let h = hw_bases(&v);
    let n = rep.trimmed().dims.len();
    Ok((0..n)
        .map(|i| {
            let basis = h.get(i).map_or(&[][..], Vec::as_slice);
            let cols: Vec<SparseVec> = (0..rep.dim(i))
                .map(|k| {
                    let (_, idx) = lay.index(i, 0, k).expect("vertex in range");
                    column_in(basis, &SparseVec::unit(idx))
                })
                .collect();
            Matrix::from_columns(basis.len(), &cols)
        })
        .collect())
}
