use super::{GradedVec, GradedWeightModule};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::{Eliminator, Matrix, SparseVec};
use crate::pbw::Generator;

/// A linear map sending depth `n` of the source to depth `n + shift` of the
/// target. `blocks[n]` is `None` where the target depth is not materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i64,
    pub blocks: Vec<Option<Matrix>>,
}

impl GradedMap {
    pub fn apply(&self, v: &GradedVec) -> Result<GradedVec> {
        let target = v.depth + self.shift;
        if v.is_zero() || v.depth < 0 {
            return Ok(GradedVec::new(target, SparseVec::new()));
        }
        let block = self
            .blocks
            .get(v.depth as usize)
            .and_then(Option::as_ref)
            .ok_or(Error::TruncationOverflow {
                depth: target,
                max: self.blocks.len().saturating_sub(1),
            })?;
        Ok(GradedVec::new(target, block.apply(&v.vec)))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Matrix::is_zero)
    }

    /// Whether every materialized block at source depth `<= upto` is square and invertible.
    pub fn invertible_upto(&self, upto: usize) -> bool {
        self.blocks.iter().take(upto + 1).all(|b| match b {
            Some(m) => m.rows() == m.cols() && (m.rows() == 0 || m.inverse().is_some()),
            None => false,
        })
    }

    /// Checks `phi(g v) = g phi(v)` on every basis vector where both sides are computable.
    pub fn commutes_with(
        &self,
        src: &GradedWeightModule,
        dst: &GradedWeightModule,
        gens: &[Generator],
    ) -> bool {
        for &g in gens {
            for n in 0..=src.depth() {
                for j in 0..src.dims()[n] {
                    let v = GradedVec::basis(n, j);
                    let lhs = src.apply_gen(g, &v).and_then(|w| self.apply(&w));
                    let rhs = self.apply(&v).and_then(|w| dst.apply_gen(g, &w));
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        if l.vec != r.vec {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn linear_combination(
        maps: &[GradedMap],
        coeffs: &[crate::scalars::Scalar],
    ) -> Option<GradedMap> {
        let first = maps.first()?;
        let mut blocks = first
            .blocks
            .iter()
            .map(|b| b.as_ref().map(|m| Matrix::zeros(m.rows(), m.cols())))
            .collect::<Vec<_>>();
        for (map, c) in maps.iter().zip(coeffs) {
            for (acc, b) in blocks.iter_mut().zip(&map.blocks) {
                if let (Some(a), Some(b)) = (acc.as_mut(), b) {
                    *a = a.add(&b.scale(c));
                }
            }
        }
        Some(GradedMap {
            shift: first.shift,
            blocks,
        })
    }
}

/// The depth shift `s` with `top(m1) = top(m2) q^-s`, if the tops differ by an integral power of q.
pub fn weight_shift(m1: &GradedWeightModule, m2: &GradedWeightModule) -> Option<i64> {
    let k = m1.top_weight().half_step_offset(m2.top_weight())?;
    (k % 2 == 0).then_some(-k / 2)
}

struct Layout {
    shift: i64,
    offsets: Vec<Option<usize>>,
    total: usize,
}

impl Layout {
    fn new(m1: &GradedWeightModule, m2: &GradedWeightModule, shift: i64) -> Layout {
        let mut offsets = Vec::with_capacity(m1.depth() + 1);
        let mut total = 0;
        for n in 0..=m1.depth() {
            let t = n as i64 + shift;
            // Depths outside a finite target are zero spaces, not truncated ones.
            if t < 0 || (m2.is_finite() && t > m2.depth() as i64) {
                offsets.push(Some(total));
            } else if t > m2.depth() as i64 {
                offsets.push(None);
            } else {
                offsets.push(Some(total));
                total += m1.dims()[n] * m2.dims()[t as usize];
            }
        }
        Layout {
            shift,
            offsets,
            total,
        }
    }

    /// Index of the unknown `phi_n[row, col]`.
    fn var(&self, m2: &GradedWeightModule, n: usize, row: usize, col: usize) -> usize {
        let t = (n as i64 + self.shift) as usize;
        self.offsets[n].expect("materialized block") + col * m2.dims()[t] + row
    }
}

/// Equations `phi(g e_j) - g phi(e_j) = 0` for one generator and source depth.
fn equations(
    m1: &GradedWeightModule,
    m2: &GradedWeightModule,
    lay: &Layout,
    g: Generator,
    n: usize,
) -> Vec<SparseVec> {
    let mut eqs = Vec::new();
    let n2 = m2.depth() as i64;
    let src_t = n as i64 + lay.shift;
    for j in 0..m1.dims()[n] {
        let Ok(ge) = m1.apply_basis(g, n, j) else {
            continue;
        };
        let tgt = ge.depth + lay.shift;
        // Both sides live at depth tgt of m2; skip if it is empty or not materialized.
        if tgt < 0 || tgt > n2 || (src_t > n2 && !m2.is_finite()) {
            continue;
        }
        let mut rows: Vec<SparseVec> = vec![SparseVec::new(); m2.dim(tgt)];
        if ge.depth >= 0 {
            for (c, x) in ge.vec.iter() {
                for (rho, row) in rows.iter_mut().enumerate() {
                    row.add_at(lay.var(m2, ge.depth as usize, rho, c), x);
                }
            }
        }
        if (0..=n2).contains(&src_t) {
            let mut ok = true;
            for r in 0..m2.dims()[src_t as usize] {
                match m2.apply_basis(g, src_t as usize, r) {
                    Ok(img) => {
                        for (rho, x) in img.vec.iter() {
                            rows[rho].add_at(lay.var(m2, n, r, j), &-x.clone());
                        }
                    }
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
        }
        eqs.extend(rows.into_iter().filter(|r| !r.is_zero()));
    }
    eqs
}

/// Basis of the graded maps `m1 -> m2` of shift `shift` commuting with `gens`.
pub fn find_intertwiners_with(
    m1: &GradedWeightModule,
    m2: &GradedWeightModule,
    shift: i64,
    gens: &[Generator],
    strategy: Strategy,
) -> Vec<GradedMap> {
    let lay = Layout::new(m1, m2, shift);
    let jobs: Vec<(Generator, usize)> = gens
        .iter()
        .flat_map(|&g| (0..=m1.depth()).map(move |n| (g, n)))
        .collect();
    let batches = strategy.map(&jobs, |&(g, n)| equations(m1, m2, &lay, g, n));
    let mut elim = Eliminator::new(lay.total);
    for eq in batches.iter().flatten() {
        elim.add_row(eq);
    }
    elim.nullspace()
        .into_iter()
        .map(|x| {
            let blocks = (0..=m1.depth())
                .map(|n| {
                    let t = n as i64 + shift;
                    let off = lay.offsets[n]?;
                    let rows = m2.dim(t);
                    let cols = m1.dims()[n];
                    let mut b = Matrix::zeros(rows, cols);
                    if t >= 0 {
                        for c in 0..cols {
                            for r in 0..rows {
                                let v = x.get(off + c * rows + r);
                                if !v.is_zero() {
                                    b.set(r, c, v);
                                }
                            }
                        }
                    }
                    Some(b)
                })
                .collect();
            GradedMap { shift, blocks }
        })
        .collect()
}

/// Module maps `m1 -> m2` for all generators, with the shift read off the top weights.
pub fn find_intertwiners(m1: &GradedWeightModule, m2: &GradedWeightModule) -> Vec<GradedMap> {
    match weight_shift(m1, m2) {
        Some(s) => find_intertwiners_with(m1, m2, s, &Generator::ALL, Strategy::default()),
        None => Vec::new(),
    }
}
