//! Comultiplications, tensor product modules, and the functor `- (x) B~_z`
//! checked on concrete Hom spaces.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::{span_basis, Matrix, SparseVec};
use crate::pbw::{FreeExpr, Generator, PbwElement, PbwMono};
use crate::scalars::Scalar;
use crate::verma::build_b_tilde;
use crate::wmod::{
    defining_relations, find_intertwiners_with, highest_weight_vectors, weight_shift, GradedMap,
    GradedVec, GradedWeightModule, ModuleShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `E -> 1(x)E + E(x)K`, `F -> K^-1(x)F + F(x)1`, `H_q -> 1(x)H_q`.
    SchrodingerDelta,
    /// `E -> E(x)1 + K(x)E`, `F -> F(x)K^-1 + 1(x)F`; U_q(sl2) only.
    Sl2DeltaPrime,
}

/// `coeff * left (x) right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureTensor {
    pub coeff: Scalar,
    pub left: Vec<Generator>,
    pub right: Vec<Generator>,
}

#[derive(Clone, Debug)]
pub struct Comultiplication {
    pub variant: Variant,
    pub images: BTreeMap<Generator, Vec<PureTensor>>,
}

fn pt(left: &[Generator], right: &[Generator]) -> PureTensor {
    PureTensor {
        coeff: Scalar::one(),
        left: left.to_vec(),
        right: right.to_vec(),
    }
}

impl Comultiplication {
    pub fn new(variant: Variant) -> Comultiplication {
        use Generator::*;
        let mut images = BTreeMap::new();
        match variant {
            Variant::SchrodingerDelta => {
                images.insert(E, vec![pt(&[], &[E]), pt(&[E], &[K])]);
                images.insert(F, vec![pt(&[Kinv], &[F]), pt(&[F], &[])]);
                for g in [X, Y, Z] {
                    images.insert(g, vec![pt(&[], &[g])]);
                }
            }
            Variant::Sl2DeltaPrime => {
                images.insert(E, vec![pt(&[E], &[]), pt(&[K], &[E])]);
                images.insert(F, vec![pt(&[F], &[Kinv]), pt(&[], &[F])]);
            }
        }
        images.insert(K, vec![pt(&[K], &[K])]);
        images.insert(Kinv, vec![pt(&[Kinv], &[Kinv])]);
        Comultiplication { variant, images }
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.images.keys().copied().collect()
    }

    /// The image of a sum of words in the tensor square, each factor in normal form.
    pub fn apply_free(&self, u: &FreeExpr) -> Option<TensorElement> {
        let mut out = TensorElement::default();
        for (word, c) in u.terms() {
            let mut acc = TensorElement::one();
            for g in word {
                acc = acc.mul(&self.image(*g)?);
            }
            out.add_scaled(&acc, c);
        }
        Some(out)
    }

    fn image(&self, g: Generator) -> Option<TensorElement> {
        let terms = self.images.get(&g)?;
        let mut out = TensorElement::default();
        for t in terms {
            let mono = |w: &[Generator]| {
                w.iter()
                    .rev()
                    .fold(PbwElement::one(), |acc, &h| acc.left_mul_gen(h))
            };
            out.add_product(&mono(&t.left), &mono(&t.right), &t.coeff);
        }
        Some(out)
    }

    /// Names of the defining relations (within the domain) not respected by this map.
    pub fn failing_relations(&self) -> Vec<String> {
        let gens = self.generators();
        defining_relations()
            .into_iter()
            .filter(|r| {
                r.lhs
                    .terms()
                    .chain(r.rhs.terms())
                    .all(|(w, _)| w.iter().all(|g| gens.contains(g)))
            })
            .filter(|r| {
                let diff = r.lhs.minus(&r.rhs);
                !self
                    .apply_free(&diff)
                    .expect("generators in domain")
                    .is_zero()
            })
            .map(|r| r.name)
            .collect()
    }
}

/// An element of the tensor square, as pairs of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(PbwMono, PbwMono), Scalar>,
}

impl TensorElement {
    pub fn one() -> TensorElement {
        let mut out = TensorElement::default();
        out.terms
            .insert((PbwMono::one(), PbwMono::one()), Scalar::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_at(&mut self, key: (PbwMono, PbwMono), c: &Scalar) {
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for (k, x) in &other.terms {
            self.add_at(*k, &(x * c));
        }
    }

    fn add_product(&mut self, a: &PbwElement, b: &PbwElement, c: &Scalar) {
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_at((*ma, *mb), &(c * &(ca * cb)));
            }
        }
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::default();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = PbwElement::monomial(*a, Scalar::one())
                    .mul(&PbwElement::monomial(*c, Scalar::one()));
                let right = PbwElement::monomial(*b, Scalar::one())
                    .mul(&PbwElement::monomial(*d, Scalar::one()));
                out.add_product(&left, &right, &(x * y));
            }
        }
        out
    }
}

/// Basis bookkeeping for a tensor product.
///
/// Depth `n` is spanned by `e_a (x) f_b` with `e_a` at depth `n1`, `f_b` at
/// depth `n - n1`, ordered by `n1`, then `a`, then `b`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    right_dims: Vec<usize>,
    offsets: Vec<Vec<usize>>,
}

impl TensorLayout {
    fn new(m1: &GradedWeightModule, m2: &GradedWeightModule, depth: usize) -> TensorLayout {
        let left_dims: Vec<usize> = (0..=depth).map(|n| m1.dim(n as i64)).collect();
        let right_dims: Vec<usize> = (0..=depth).map(|n| m2.dim(n as i64)).collect();
        let offsets = (0..=depth)
            .map(|n| {
                let mut acc = 0;
                (0..=n + 1)
                    .map(|n1| {
                        let o = acc;
                        if n1 <= n {
                            acc += left_dims[n1] * right_dims[n - n1];
                        }
                        o
                    })
                    .collect()
            })
            .collect();
        TensorLayout {
            right_dims,
            offsets,
        }
    }

    /// Dimension of depth `n`.
    pub fn dim(&self, n: usize) -> usize {
        self.offsets[n][n + 1]
    }

    /// Basis index at depth `n1 + n2` of `e_a (x) f_b`.
    pub fn index(&self, n1: usize, a: usize, n2: usize, b: usize) -> usize {
        self.offsets[n1 + n2][n1] + a * self.right_dims[n2] + b
    }

    /// Inverse of [`TensorLayout::index`].
    pub fn split(&self, n: usize, idx: usize) -> (usize, usize, usize, usize) {
        let n1 = (0..=n)
            .find(|&k| idx < self.offsets[n][k + 1])
            .expect("index in range");
        let r = idx - self.offsets[n][n1];
        let d2 = self.right_dims[n - n1];
        (n1, r / d2, n - n1, r % d2)
    }
}

#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: GradedWeightModule,
    pub layout: TensorLayout,
}

impl TensorModule {
    pub fn index(&self, n1: usize, a: usize, n2: usize, b: usize) -> usize {
        self.layout.index(n1, a, n2, b)
    }

    pub fn split(&self, n: usize, idx: usize) -> (usize, usize, usize, usize) {
        self.layout.split(n, idx)
    }
}

fn apply_word_basis(m: &GradedWeightModule, word: &[Generator], n: usize, j: usize) -> GradedVec {
    m.apply_word(word, &GradedVec::basis(n, j))
        .expect("factor depths cover the tensor truncation")
}

/// `m1 (x) m2` up to depth `depth`, with the action through `comult`.
///
/// Each factor must be finite or materialized at least to `depth`.
pub fn tensor_modules(
    m1: &GradedWeightModule,
    m2: &GradedWeightModule,
    comult: &Comultiplication,
    depth: usize,
    strategy: Strategy,
) -> Result<TensorModule> {
    for m in [m1, m2] {
        if !m.is_finite() && m.depth() < depth {
            return Err(Error::TruncationOverflow {
                depth: depth as i64,
                max: m.depth(),
            });
        }
    }
    let finite = m1.is_finite() && m2.is_finite();
    let depth = if finite {
        depth.min(m1.depth() + m2.depth())
    } else {
        depth
    };
    let layout = TensorLayout::new(m1, m2, depth);
    let dims: Vec<usize> = (0..=depth).map(|n| layout.dim(n)).collect();
    let charge = match comult.variant {
        Variant::SchrodingerDelta => m2.central_charge().clone(),
        Variant::Sl2DeltaPrime => Scalar::zero(),
    };
    let shape = ModuleShape {
        top_weight: crate::scalars::Weight::new(m1.top_weight().value() * m2.top_weight().value())?,
        central_charge: charge,
        dims: dims.clone(),
        finite,
    };
    let module = GradedWeightModule::from_fn(shape, strategy, |g, n, idx| {
        let Some(terms) = comult.images.get(&g) else {
            return SparseVec::new();
        };
        let (n1, a, n2, b) = layout.split(n, idx);
        let mut out = SparseVec::new();
        for t in terms {
            let l = apply_word_basis(m1, &t.left, n1, a);
            let r = apply_word_basis(m2, &t.right, n2, b);
            if l.is_zero() || r.is_zero() {
                continue;
            }
            for (x, cx) in l.vec.iter() {
                for (y, cy) in r.vec.iter() {
                    let i = layout.index(l.depth as usize, x, r.depth as usize, y);
                    out.add_at(i, &(&t.coeff * &(cx * cy)));
                }
            }
        }
        out
    });
    let labels = (0..=depth)
        .map(|n| {
            (0..dims[n])
                .map(|i| {
                    let (n1, a, n2, b) = layout.split(n, i);
                    format!("{}(x){}", m1.label(n1, a), m2.label(n2, b))
                })
                .collect()
        })
        .collect();
    Ok(TensorModule {
        module: module.with_labels(labels),
        layout,
    })
}

/// `N~ (x) B~_z`, with `H_q` acting on `N` by zero.
pub fn tensor_with_b(n: &GradedWeightModule, z: &Scalar, depth: usize) -> Result<TensorModule> {
    let b = build_b_tilde(z, depth)?;
    tensor_modules(
        n,
        &b,
        &Comultiplication::new(Variant::SchrodingerDelta),
        depth,
        Strategy::default(),
    )
}

/// Tensor product of finite-dimensional U_q(sl2)-modules through `Delta'`.
pub fn sl2_tensor(m: &GradedWeightModule, n: &GradedWeightModule) -> Result<TensorModule> {
    let depth = m.depth() + n.depth();
    tensor_modules(
        m,
        n,
        &Comultiplication::new(Variant::Sl2DeltaPrime),
        depth,
        Strategy::default(),
    )
}

/// Highest weight vectors per depth of a finite sl2-module, keyed by the
/// half-exponent `i` of the weight `+-q^i`.
pub fn cg_multiplicities(m: &GradedWeightModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for n in 0..=m.depth() {
        let k = highest_weight_vectors(m, n).expect("depth in range").len();
        if k > 0 {
            let w = m
                .weight_at(n as i64)
                .as_monomial()
                .expect("monomial weight");
            *out.entry(w.t_exp / 2).or_insert(0) += k;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HomBijection {
    pub sl2_dim: usize,
    pub lifted_dim: usize,
    /// Every `f (x) 1` commutes with the U_q(s)-action and they span the lifted Hom space.
    pub lift_is_basis: bool,
}

impl HomBijection {
    pub fn agrees(&self) -> bool {
        self.sl2_dim == self.lifted_dim && self.lift_is_basis
    }
}

/// `f (x) 1` as a map between tensor modules.
pub fn lift_map(f: &GradedMap, src: &TensorModule, dst: &TensorModule) -> GradedMap {
    let m = &src.module;
    let blocks = (0..=m.depth())
        .map(|n| {
            let t = n as i64 + f.shift;
            if t > dst.module.depth() as i64 {
                return None;
            }
            let mut b = Matrix::zeros(dst.module.dim(t), m.dims()[n]);
            for idx in 0..m.dims()[n] {
                let (n1, a, n2, bb) = src.split(n, idx);
                let img = f.apply(&GradedVec::basis(n1, a)).expect("materialized");
                if img.depth < 0 {
                    continue;
                }
                for (x, c) in img.vec.iter() {
                    b.set(dst.index(img.depth as usize, x, n2, bb), idx, c.clone());
                }
            }
            Some(b)
        })
        .collect();
    GradedMap {
        shift: f.shift,
        blocks,
    }
}

fn flatten(maps: &[GradedMap]) -> Vec<SparseVec> {
    maps.iter()
        .map(|g| {
            let mut v = SparseVec::new();
            let mut off = 0;
            for b in g.blocks.iter().flatten() {
                for (r, c, x) in b.entries() {
                    v.add_at(off + c * b.rows() + r, x);
                }
                off += b.rows() * b.cols();
            }
            v
        })
        .collect()
}

/// Compares `Hom_sl2(m, n)` with `Hom(m (x) B~, n (x) B~)` and checks that
/// `f -> f (x) 1` carries a basis to a basis.
pub fn hom_bijection_check(
    m: &GradedWeightModule,
    n: &GradedWeightModule,
    z: &Scalar,
    depth: usize,
) -> Result<HomBijection> {
    let shift = weight_shift(m, n);
    let sl2_maps = match shift {
        Some(s) => find_intertwiners_with(m, n, s, &Generator::SL2, Strategy::default()),
        None => Vec::new(),
    };
    let mb = tensor_with_b(m, z, depth)?;
    let nb = tensor_with_b(n, z, depth)?;
    let lifted = match weight_shift(&mb.module, &nb.module) {
        Some(s) => find_intertwiners_with(
            &mb.module,
            &nb.module,
            s,
            &Generator::ALL,
            Strategy::default(),
        ),
        None => Vec::new(),
    };
    let lifts: Vec<GradedMap> = sl2_maps.iter().map(|f| lift_map(f, &mb, &nb)).collect();
    let commute = lifts
        .iter()
        .all(|g| g.commutes_with(&mb.module, &nb.module, &Generator::ALL));
    let spans = {
        let mut all = flatten(&lifted);
        let width = all
            .iter()
            .chain(flatten(&lifts).iter())
            .filter_map(SparseVec::max_index)
            .max()
            .map_or(0, |x| x + 1);
        let r_lifted = span_basis(&all, width).rank();
        let lf = flatten(&lifts);
        let r_lifts = span_basis(&lf, width).rank();
        all.extend(lf);
        let r_both = span_basis(&all, width).rank();
        r_lifts == lifts.len() && r_lifted == r_both && r_lifts == r_both
    };
    Ok(HomBijection {
        sl2_dim: sl2_maps.len(),
        lifted_dim: lifted.len(),
        lift_is_basis: commute && spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Weight;
    use crate::verma::{build_simple_sl2, build_verma, build_verma_sl2};
    use crate::wmod::{check_relations, find_intertwiners};
    use proptest::prelude::*;

    #[test]
    fn comultiplications_respect_relations() {
        assert!(Comultiplication::new(Variant::SchrodingerDelta)
            .failing_relations()
            .is_empty());
        assert!(Comultiplication::new(Variant::Sl2DeltaPrime)
            .failing_relations()
            .is_empty());
    }

    #[test]
    fn swapped_delta_breaks_a_relation() {
        let mut c = Comultiplication::new(Variant::SchrodingerDelta);
        c.images.insert(
            Generator::E,
            vec![
                pt(&[Generator::E], &[]),
                pt(&[Generator::K], &[Generator::E]),
            ],
        );
        assert!(!c.failing_relations().is_empty());
    }

    #[test]
    fn tensor_index_round_trip() {
        let a = build_verma_sl2(&Weight::q_half(1), 6);
        let t = tensor_with_b(&a, &Scalar::z(), 6).unwrap();
        for n in 0..=6 {
            for i in 0..t.module.dims()[n] {
                let (n1, x, n2, y) = t.split(n, i);
                assert_eq!(t.index(n1, x, n2, y), i);
            }
        }
        assert_eq!(t.module.dims(), &[1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn tensor_realizes_verma() {
        let lam = Weight::generic();
        let n = build_verma_sl2(&lam.shift_half_steps(1), 6);
        let t = tensor_with_b(&n, &Scalar::z(), 6).unwrap();
        assert!(check_relations(&t.module).all_passed());
        assert_eq!(t.module.top_weight(), &lam);
        let d = build_verma(&lam, &Scalar::z(), 6);
        let maps = find_intertwiners(&d, &t.module);
        assert_eq!(maps.len(), 1);
        assert!(maps[0].invertible_upto(6));
    }

    #[test]
    fn trivial_factor_gives_b_tilde() {
        let t = tensor_with_b(&build_simple_sl2(1, 0), &Scalar::z(), 6).unwrap();
        let b = build_b_tilde(&Scalar::z(), 6).unwrap();
        let maps = find_intertwiners(&t.module, &b);
        assert_eq!(maps.len(), 1);
        assert!(maps[0].invertible_upto(6));
    }

    #[test]
    fn clebsch_gordan() {
        let l = |i| build_simple_sl2(1, i);
        let m = sl2_tensor(&l(1), &l(1)).unwrap();
        assert_eq!(m.module.total_dim(), 4);
        assert!(check_relations(&m.module).all_passed());
        assert_eq!(
            cg_multiplicities(&m.module),
            BTreeMap::from([(0, 1), (2, 1)])
        );
        assert_eq!(
            cg_multiplicities(&sl2_tensor(&l(1), &l(3)).unwrap().module),
            BTreeMap::from([(2, 1), (4, 1)])
        );
        assert_eq!(
            cg_multiplicities(&sl2_tensor(&l(0), &l(3)).unwrap().module),
            BTreeMap::from([(3, 1)])
        );
        assert_eq!(
            cg_multiplicities(&sl2_tensor(&l(2), &l(3)).unwrap().module),
            BTreeMap::from([(1, 1), (3, 1), (5, 1)])
        );
    }

    #[test]
    fn hom_bijection_examples() {
        let z = Scalar::z();
        let r =
            hom_bijection_check(&build_simple_sl2(1, 1), &build_simple_sl2(1, 1), &z, 8).unwrap();
        assert_eq!((r.sl2_dim, r.lifted_dim), (1, 1));
        assert!(r.agrees());
        let r = hom_bijection_check(
            &build_verma_sl2(&Weight::q_half(-6), 6),
            &build_verma_sl2(&Weight::q_half(2), 10),
            &z,
            6,
        )
        .unwrap();
        assert_eq!((r.sl2_dim, r.lifted_dim), (1, 1));
        assert!(r.agrees());
        let r =
            hom_bijection_check(&build_simple_sl2(1, 0), &build_simple_sl2(1, 2), &z, 8).unwrap();
        assert_eq!((r.sl2_dim, r.lifted_dim), (0, 0));
        assert!(r.agrees());
    }

    fn word() -> impl proptest::strategy::Strategy<Value = Vec<Generator>> {
        prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        // Delta(w) agrees with Delta of the normal form of w.
        #[test]
        fn delta_is_multiplicative(w in word()) {
            let c = Comultiplication::new(Variant::SchrodingerDelta);
            let direct = c.apply_free(&FreeExpr::word(w.clone())).unwrap();
            let nf = FreeExpr::word(w).normal_form().to_free();
            prop_assert_eq!(direct, c.apply_free(&nf).unwrap());
        }
    }
}
