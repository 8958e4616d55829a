//! Exact linear algebra over the scalar field: sparse vectors, dense
//! matrices, and incremental row reduction.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::Scalar;

/// A sparse vector: coordinate index to nonzero scalar.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> SparseVec {
        let mut v = SparseVec::new();
        v.entries.insert(i, Scalar::one());
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn from_dense(values: &[Scalar]) -> SparseVec {
        SparseVec::from_pairs(values.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    /// Adds `c` at coordinate `i`, dropping the entry if it cancels.
    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn remove(&mut self, i: usize) -> Option<Scalar> {
        self.entries.remove(&i)
    }
}

impl std::ops::Sub for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl std::ops::Add for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c.to_string())))
            .finish()
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept in reduced row echelon form: each pivot row has a one in
/// its pivot column and zeros in every other pivot column. Pivots are chosen
/// by lowest scalar complexity to limit expression swell.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Eliminator {
        Eliminator {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        let hits: Vec<usize> = r
            .iter()
            .map(|(i, _)| i)
            .filter(|i| self.rows.contains_key(i))
            .collect();
        for col in hits {
            if let Some(c) = r.get_ref(col).cloned() {
                r.add_scaled(&self.rows[&col], &-c);
            }
        }
        r
    }

    /// Adds a row; returns true if the rank grew.
    pub fn add_row(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let (col, piv) = r
            .iter()
            .min_by_key(|(i, c)| (c.complexity(), *i))
            .map(|(i, c)| (i, c.clone()))
            .expect("nonzero row");
        let r = r.scaled(&piv.inv().expect("pivot is nonzero"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get_ref(col).cloned() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(col, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// A basis of the solution space of `row . x = 0` for all rows.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut x = SparseVec::unit(free);
                for (&p, row) in &self.rows {
                    if let Some(c) = row.get_ref(free) {
                        x.add_at(p, &-c.clone());
                    }
                }
                x
            })
            .collect()
    }

    /// The reduced rows, by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(&c, r)| (c, r))
    }
}

/// Coordinates of `v` in the span of the linearly independent `basis`, if it lies there.
pub fn coordinates(basis: &[SparseVec], v: &SparseVec) -> Option<Vec<Scalar>> {
    let k = basis.len();
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (r, c) in b.iter() {
            rows.entry(r).or_default().add_at(j, c);
        }
    }
    for (r, c) in v.iter() {
        rows.entry(r).or_default().add_at(k, &-c.clone());
    }
    let mut e = Eliminator::new(k + 1);
    for row in rows.values() {
        e.add_row(row);
    }
    let sol = e.nullspace().into_iter().find(|x| !x.get(k).is_zero())?;
    let scale = sol.get(k).inv().ok()?;
    Some((0..k).map(|j| sol.get(j) * &scale).collect())
}

/// Basis of the space spanned by `vectors`, in reduced echelon form.
pub fn span_basis(vectors: &[SparseVec], ncols: usize) -> Eliminator {
    let mut e = Eliminator::new(ncols);
    for v in vectors {
        e.add_row(v);
    }
    e
}

/// A dense matrix with scalar entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Matrix {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r);
        }
        Matrix { rows, cols, data }
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Scalar::from_int(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> SparseVec {
        SparseVec::from_pairs((0..self.rows).map(|r| (r, self.get(r, c).clone())))
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col.iter() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, x) in v.iter() {
            for r in 0..self.rows {
                let a = self.get(r, k);
                if !a.is_zero() {
                    out.add_at(r, &(a * x));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    fn eliminator(&self) -> Eliminator {
        let mut e = Eliminator::new(self.cols);
        for r in 0..self.rows {
            e.add_row(&SparseVec::from_dense(self.row(r)));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.eliminator().rank()
    }

    /// Basis of the kernel.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.eliminator().nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Row-reduce [A | I] with pivots restricted to the left block.
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r][col].complexity())?;
            rows.swap(col, p);
            let inv = rows[col][col].inv().ok()?;
            for x in rows[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        Some(Matrix::from_rows(
            n,
            n,
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn s(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = Matrix::from_rows(
            2,
            4,
            vec![
                vec![s("1"), s("q"), s("0"), s("z")],
                vec![s("2"), s("2*q"), s("w"), s("0")],
            ],
        );
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).is_zero(), "{v:?}");
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(2, 2, vec![vec![s("q"), s("1")], vec![s("z"), s("w")]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular = Matrix::from_ints(2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn eliminator_reduces_to_complement() {
        let mut e = Eliminator::new(3);
        e.add_row(&SparseVec::from_dense(&[s("1"), s("t"), s("0")]));
        assert!(!e.add_row(&SparseVec::from_dense(&[s("z"), s("z*t"), s("0")])));
        let r = e.reduce(&SparseVec::from_dense(&[s("1"), s("0"), s("1")]));
        assert!(r.iter().all(|(i, _)| !e.is_pivot(i)));
        assert!(e.contains(&SparseVec::from_dense(&[s("2"), s("2*t"), s("0")])));
    }
}
