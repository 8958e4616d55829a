//! Depth-graded weight modules with exact sparse generator actions.
//!
//! Depth `n` holds the weight space of weight `top * q^-n`. A generator `g`
//! maps depth `n` to depth `n - g.degree()`. Infinite modules are stored up
//! to a truncation depth `N`; an action slice whose target lies beyond `N`
//! is not materialized, and any computation that needs it fails with
//! [`Error::TruncationOverflow`]. Identities are only asserted where every
//! intermediate vector stays inside `[0, N]`.

mod hom;
mod hw;
mod json;
mod relations;

pub use hom::{find_intertwiners, find_intertwiners_with, weight_shift, GradedMap};
pub use hw::{
    highest_weight_vectors, joint_kernel, quotient, singular_vectors, submodule_generated,
    SingularVector, Submodule,
};
pub use json::ModuleJson;
pub use relations::{
    check_relations, check_relations_with, defining_relations, Relation, RelationReport,
    RelationResult,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::SparseVec;
use crate::pbw::{FreeExpr, Generator, PbwElement};
use crate::scalars::{Scalar, Weight};

/// Images of the basis vectors of one depth slice, or `None` when the
/// target depth is beyond the truncation.
pub type Slice = Option<Vec<SparseVec>>;

/// A vector living in a single depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVec {
    pub depth: i64,
    pub vec: SparseVec,
}

impl GradedVec {
    pub fn new(depth: i64, vec: SparseVec) -> GradedVec {
        GradedVec { depth, vec }
    }

    pub fn basis(depth: usize, j: usize) -> GradedVec {
        GradedVec {
            depth: depth as i64,
            vec: SparseVec::unit(j),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }
}

/// A vector spread over several depths.
pub type GradedVector = BTreeMap<i64, SparseVec>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedWeightModule {
    top_weight: Weight,
    central_charge: Scalar,
    depth: usize,
    dims: Vec<usize>,
    finite: bool,
    actions: Vec<Vec<Slice>>,
    labels: Option<Vec<Vec<String>>>,
}

/// Shape data for building a module.
#[derive(Clone, Debug)]
pub struct ModuleShape {
    pub top_weight: Weight,
    pub central_charge: Scalar,
    pub dims: Vec<usize>,
    /// Whether the module has nothing beyond the last depth.
    pub finite: bool,
}

impl GradedWeightModule {
    /// Builds a module whose `K`, `K^-1` and `Z` act diagonally by the weight
    /// and the central charge; `lower_raise(g, n, j)` gives the image of basis
    /// vector `j` at depth `n` under `g` in {E, F, X, Y}.
    pub fn from_fn<A>(shape: ModuleShape, strategy: Strategy, lower_raise: A) -> GradedWeightModule
    where
        A: Fn(Generator, usize, usize) -> SparseVec + Sync + Send,
    {
        let depth = shape.dims.len().saturating_sub(1);
        let jobs: Vec<(Generator, usize)> = Generator::ALL
            .iter()
            .flat_map(|&g| (0..=depth).map(move |n| (g, n)))
            .collect();
        let weights: Vec<Scalar> = (0..=depth)
            .map(|n| shape.top_weight.value() * &Scalar::q_pow(-(n as i64)))
            .collect();
        let slices = strategy.map(&jobs, |&(g, n)| {
            let target = n as i64 - g.degree();
            if target < 0 || (shape.finite && target > depth as i64) {
                return Some(vec![SparseVec::new(); shape.dims[n]]);
            }
            if target > depth as i64 {
                return None;
            }
            let cols = (0..shape.dims[n])
                .map(|j| match g {
                    Generator::K => SparseVec::from_pairs([(j, weights[n].clone())]),
                    Generator::Kinv => {
                        SparseVec::from_pairs([(j, weights[n].inv().expect("weights are nonzero"))])
                    }
                    Generator::Z => SparseVec::from_pairs([(j, shape.central_charge.clone())]),
                    _ => lower_raise(g, n, j),
                })
                .collect();
            Some(cols)
        });
        let mut actions = vec![Vec::with_capacity(depth + 1); Generator::ALL.len()];
        for ((g, _), s) in jobs.into_iter().zip(slices) {
            actions[g.index()].push(s);
        }
        GradedWeightModule {
            top_weight: shape.top_weight,
            central_charge: shape.central_charge,
            depth,
            dims: shape.dims,
            finite: shape.finite,
            actions,
            labels: None,
        }
    }

    /// Builds from explicit action slices, checking shapes.
    pub fn from_parts(shape: ModuleShape, actions: Vec<Vec<Slice>>) -> Result<GradedWeightModule> {
        let depth = shape
            .dims
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidModule("empty dims".into()))?;
        if actions.len() != Generator::ALL.len() {
            return Err(Error::InvalidModule(
                "need actions for all seven generators".into(),
            ));
        }
        for g in Generator::ALL {
            let slices = &actions[g.index()];
            if slices.len() != depth + 1 {
                return Err(Error::InvalidModule(format!(
                    "{g}: expected {} slices",
                    depth + 1
                )));
            }
            for (n, s) in slices.iter().enumerate() {
                let target = n as i64 - g.degree();
                let Some(cols) = s else {
                    if target > depth as i64 && !shape.finite {
                        continue;
                    }
                    return Err(Error::InvalidModule(format!(
                        "{g}: slice {n} must be present"
                    )));
                };
                if cols.len() != shape.dims[n] {
                    return Err(Error::InvalidModule(format!(
                        "{g}: slice {n} has {} columns",
                        cols.len()
                    )));
                }
                let tdim = if (0..=depth as i64).contains(&target) {
                    shape.dims[target as usize]
                } else {
                    0
                };
                for col in cols {
                    if col.max_index().is_some_and(|r| r >= tdim) {
                        return Err(Error::InvalidModule(format!(
                            "{g}: slice {n} row out of range"
                        )));
                    }
                }
            }
        }
        Ok(GradedWeightModule {
            top_weight: shape.top_weight,
            central_charge: shape.central_charge,
            depth,
            dims: shape.dims,
            finite: shape.finite,
            actions,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> GradedWeightModule {
        assert_eq!(labels.len(), self.dims.len());
        self.labels = Some(labels);
        self
    }

    pub fn top_weight(&self) -> &Weight {
        &self.top_weight
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.central_charge
    }

    /// The truncation depth `N`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i64) -> usize {
        if (0..=self.depth as i64).contains(&n) {
            self.dims[n as usize]
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, n: usize, j: usize) -> String {
        match &self.labels {
            Some(l) => l[n][j].clone(),
            None => format!("b{n}_{j}"),
        }
    }

    /// The K-eigenvalue at depth `n`.
    pub fn weight_at(&self, n: i64) -> Weight {
        self.top_weight.shift_q(-n)
    }

    pub fn slice(&self, g: Generator, n: usize) -> Option<&[SparseVec]> {
        self.actions[g.index()][n].as_deref()
    }

    pub(crate) fn actions(&self) -> &Vec<Vec<Slice>> {
        &self.actions
    }

    /// Overwrites a single action entry; used to build deliberately broken modules.
    pub fn set_entry(
        &mut self,
        g: Generator,
        n: usize,
        col: usize,
        row: usize,
        value: Scalar,
    ) -> Result<()> {
        let cols = self.actions[g.index()][n]
            .as_mut()
            .ok_or(Error::TruncationOverflow {
                depth: n as i64 - g.degree(),
                max: self.depth,
            })?;
        let v = cols
            .get_mut(col)
            .ok_or_else(|| Error::InvalidModule("column out of range".into()))?;
        let old = v.get(row);
        v.add_at(row, &(value - old));
        Ok(())
    }

    /// Image of basis vector `j` at depth `n` under `g`.
    pub fn apply_basis(&self, g: Generator, n: usize, j: usize) -> Result<GradedVec> {
        let target = n as i64 - g.degree();
        match &self.actions[g.index()][n] {
            Some(cols) => Ok(GradedVec::new(target, cols[j].clone())),
            None => Err(Error::TruncationOverflow {
                depth: target,
                max: self.depth,
            }),
        }
    }

    pub fn apply_gen(&self, g: Generator, v: &GradedVec) -> Result<GradedVec> {
        let target = v.depth - g.degree();
        if v.is_zero() || v.depth < 0 {
            return Ok(GradedVec::new(target, SparseVec::new()));
        }
        if v.depth > self.depth as i64 {
            return Err(Error::TruncationOverflow {
                depth: v.depth,
                max: self.depth,
            });
        }
        let cols = self.actions[g.index()][v.depth as usize].as_ref().ok_or(
            Error::TruncationOverflow {
                depth: target,
                max: self.depth,
            },
        )?;
        let mut out = SparseVec::new();
        for (j, c) in v.vec.iter() {
            out.add_scaled(&cols[j], c);
        }
        Ok(GradedVec::new(target, out))
    }

    /// Applies a word, rightmost letter first.
    pub fn apply_word(&self, word: &[Generator], v: &GradedVec) -> Result<GradedVec> {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.apply_gen(g, &cur)?;
        }
        Ok(cur)
    }

    /// Applies a sum of words to a homogeneous vector.
    pub fn apply_free(&self, u: &FreeExpr, v: &GradedVec) -> Result<GradedVector> {
        let mut out = GradedVector::new();
        for (word, c) in u.terms() {
            let r = self.apply_word(word, v)?;
            let slot = out.entry(r.depth).or_default();
            slot.add_scaled(&r.vec, c);
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// Applies an algebra element to a homogeneous vector.
pub fn act(m: &GradedWeightModule, u: &PbwElement, v: &GradedVec) -> Result<GradedVector> {
    m.apply_free(&u.to_free(), v)
}

#[cfg(test)]
mod tests;
