use std::collections::VecDeque;

use super::{GradedVec, GradedWeightModule, ModuleShape, Slice};
use crate::error::{Error, Result};
use crate::linalg::{Eliminator, SparseVec};
use crate::pbw::Generator;
use crate::scalars::Weight;

/// Rows of the linear map given by `cols`, as sparse row vectors.
fn transpose_cols(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        for (r, c) in col.iter() {
            if rows.len() <= r {
                rows.resize(r + 1, SparseVec::new());
            }
            rows[r].add_at(j, c);
        }
    }
    rows
}

/// Basis of the vectors at depth `n` killed by every generator in `gens`.
pub fn joint_kernel(
    m: &GradedWeightModule,
    n: usize,
    gens: &[Generator],
) -> Result<Vec<SparseVec>> {
    if n > m.depth() {
        return Err(Error::TruncationOverflow {
            depth: n as i64,
            max: m.depth(),
        });
    }
    let mut e = Eliminator::new(m.dims()[n]);
    for &g in gens {
        let cols = m.slice(g, n).ok_or(Error::TruncationOverflow {
            depth: n as i64 - g.degree(),
            max: m.depth(),
        })?;
        for row in transpose_cols(cols) {
            e.add_row(&row);
        }
    }
    Ok(e.nullspace())
}

/// Basis of the vectors at depth `n` killed by both `E` and `X`.
pub fn highest_weight_vectors(m: &GradedWeightModule, n: usize) -> Result<Vec<SparseVec>> {
    joint_kernel(m, n, &[Generator::E, Generator::X])
}

/// A highest weight vector below the top.
#[derive(Clone, Debug)]
pub struct SingularVector {
    pub depth: usize,
    pub weight: Weight,
    pub vector: SparseVec,
}

/// All highest weight vectors at depths `1..=N`.
pub fn singular_vectors(m: &GradedWeightModule) -> Vec<SingularVector> {
    (1..=m.depth())
        .flat_map(|n| {
            highest_weight_vectors(m, n)
                .expect("depth in range")
                .into_iter()
                .map(move |vector| SingularVector {
                    depth: n,
                    weight: m.weight_at(n as i64),
                    vector,
                })
        })
        .collect()
}

/// A graded subspace, stored per depth in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Submodule {
    spaces: Vec<Eliminator>,
}

impl Submodule {
    pub fn zero(m: &GradedWeightModule) -> Submodule {
        Submodule {
            spaces: m.dims().iter().map(|&d| Eliminator::new(d)).collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Eliminator::rank).collect()
    }

    pub fn space(&self, n: usize) -> &Eliminator {
        &self.spaces[n]
    }

    pub fn contains(&self, v: &GradedVec) -> bool {
        v.is_zero()
            || (v.depth >= 0
                && (v.depth as usize) < self.spaces.len()
                && self.spaces[v.depth as usize].contains(&v.vec))
    }
}

/// The closure of `vectors` under all generators, within the truncation.
pub fn submodule_generated(m: &GradedWeightModule, vectors: &[GradedVec]) -> Result<Submodule> {
    let mut sub = Submodule::zero(m);
    let mut queue: VecDeque<GradedVec> = VecDeque::new();
    for v in vectors {
        if v.depth < 0 || v.depth > m.depth() as i64 {
            return Err(Error::TruncationOverflow {
                depth: v.depth,
                max: m.depth(),
            });
        }
        queue.push_back(v.clone());
    }
    while let Some(v) = queue.pop_front() {
        if v.is_zero() || v.depth < 0 {
            continue;
        }
        let space = &mut sub.spaces[v.depth as usize];
        let r = space.reduce(&v.vec);
        if r.is_zero() {
            continue;
        }
        space.add_row(&r);
        let r = GradedVec::new(v.depth, r);
        for g in Generator::ALL {
            match m.apply_gen(g, &r) {
                Ok(w) => queue.push_back(w),
                Err(Error::TruncationOverflow { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(sub)
}

/// The quotient module `m / sub`, with basis the non-pivot coordinates.
pub fn quotient(m: &GradedWeightModule, sub: &Submodule) -> GradedWeightModule {
    let keep: Vec<Vec<usize>> = (0..=m.depth())
        .map(|n| {
            (0..m.dims()[n])
                .filter(|&c| !sub.spaces[n].is_pivot(c))
                .collect()
        })
        .collect();
    let index_of = |n: usize, c: usize| keep[n].binary_search(&c).expect("kept coordinate");
    let mut actions: Vec<Vec<Slice>> = Vec::with_capacity(Generator::ALL.len());
    for g in Generator::ALL {
        let mut slices = Vec::with_capacity(m.depth() + 1);
        for n in 0..=m.depth() {
            let target = n as i64 - g.degree();
            let s = m.slice(g, n).map(|cols| {
                keep[n]
                    .iter()
                    .map(|&c| {
                        if target < 0 || target > m.depth() as i64 {
                            return SparseVec::new();
                        }
                        let t = target as usize;
                        let r = sub.spaces[t].reduce(&cols[c]);
                        SparseVec::from_pairs(r.iter().map(|(i, x)| (index_of(t, i), x.clone())))
                    })
                    .collect()
            });
            slices.push(s);
        }
        actions.push(slices);
    }
    let shape = ModuleShape {
        top_weight: m.top_weight().clone(),
        central_charge: m.central_charge().clone(),
        dims: keep.iter().map(Vec::len).collect(),
        finite: m.is_finite(),
    };
    let q = GradedWeightModule::from_parts(shape, actions).expect("quotient shapes are consistent");
    match m.labels() {
        Some(labels) => {
            let l = keep
                .iter()
                .enumerate()
                .map(|(n, k)| k.iter().map(|&c| labels[n][c].clone()).collect())
                .collect();
            q.with_labels(l)
        }
        None => q,
    }
}
