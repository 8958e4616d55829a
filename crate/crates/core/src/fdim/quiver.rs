//! Representations of the quiver with vertices `0, 1, 2, ...`, arrows
//! `a_i: i -> i+1`, `b_i: i+1 -> i`, and relations `b_0 a_0 = 0`,
//! `a_i b_i = b_{i+1} a_{i+1}`, products read as composition of maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::{Eliminator, Matrix, SparseVec};
use crate::scalars::{parse_scalar, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    #[default]
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q(t)")]
    RationalFunctions,
}

/// `dims[i]` is the dimension at vertex `i`; `a[i]` is `dims[i+1] x dims[i]`
/// and `b[i]` is `dims[i] x dims[i+1]`. Vertices past the end are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    pub a: Vec<Matrix>,
    pub b: Vec<Matrix>,
    pub field: Field,
}

impl QuiverRep {
    pub fn new(
        dims: Vec<usize>,
        a: Vec<Matrix>,
        b: Vec<Matrix>,
        field: Field,
    ) -> Result<QuiverRep> {
        let arrows = dims.len().saturating_sub(1);
        if a.len() != arrows || b.len() != arrows {
            return Err(Error::InvalidInput(format!(
                "{} vertices need {arrows} a-maps and {arrows} b-maps",
                dims.len()
            )));
        }
        for i in 0..arrows {
            if (a[i].rows(), a[i].cols()) != (dims[i + 1], dims[i]) {
                return Err(Error::InvalidInput(format!(
                    "a{i} must be {}x{}",
                    dims[i + 1],
                    dims[i]
                )));
            }
            if (b[i].rows(), b[i].cols()) != (dims[i], dims[i + 1]) {
                return Err(Error::InvalidInput(format!(
                    "b{i} must be {}x{}",
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(QuiverRep { dims, a, b, field })
    }

    pub fn zero() -> QuiverRep {
        QuiverRep {
            dims: vec![0],
            a: vec![],
            b: vec![],
            field: Field::Rationals,
        }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The highest vertex with nonzero dimension.
    pub fn top_vertex(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    /// `a_i`, zero beyond the stored range.
    pub fn a_map(&self, i: usize) -> Matrix {
        self.a
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(i + 1), self.dim(i)))
    }

    /// `b_i`, zero beyond the stored range.
    pub fn b_map(&self, i: usize) -> Matrix {
        self.b
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(i), self.dim(i + 1)))
    }

    /// The same representation with `n` vertices, padding or dropping zero vertices.
    pub fn resized(&self, n: usize) -> QuiverRep {
        let n = n.max(1);
        QuiverRep {
            dims: (0..n).map(|i| self.dim(i)).collect(),
            a: (0..n - 1).map(|i| self.a_map(i)).collect(),
            b: (0..n - 1).map(|i| self.b_map(i)).collect(),
            field: self.field,
        }
    }

    /// Drops trailing zero vertices.
    pub fn trimmed(&self) -> QuiverRep {
        self.resized(self.top_vertex().map_or(1, |t| t + 1))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverRelationResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverCheck {
    pub results: Vec<QuiverRelationResult>,
}

impl QuiverCheck {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn compare(name: String, lhs: &Matrix, rhs: &Matrix) -> QuiverRelationResult {
    let witness = lhs
        .entries()
        .zip(rhs.entries())
        .find(|((_, _, x), (_, _, y))| x != y)
        .map(|((row, col, x), (_, _, y))| Witness {
            row,
            col,
            lhs: x.to_string(),
            rhs: y.to_string(),
        });
    QuiverRelationResult {
        name,
        passed: witness.is_none(),
        witness,
    }
}

/// Checks `b_0 a_0 = 0` and `a_i b_i = b_{i+1} a_{i+1}` at every vertex
/// `i + 1` up to the last one, using zero maps beyond the stored range.
pub fn quiver_relation_check(rep: &QuiverRep) -> QuiverCheck {
    let mut results = vec![compare(
        "b0a0 = 0".into(),
        &rep.b_map(0).mul(&rep.a_map(0)),
        &Matrix::zeros(rep.dim(0), rep.dim(0)),
    )];
    for i in 0..rep.dims.len().saturating_sub(1) {
        // As maps at vertex i+1: first b_i then a_i, versus first a_{i+1} then b_{i+1}.
        let lhs = rep.a_map(i).mul(&rep.b_map(i));
        let rhs = rep.b_map(i + 1).mul(&rep.a_map(i + 1));
        results.push(compare(
            format!("a{i}b{i} = b{}a{}", i + 1, i + 1),
            &lhs,
            &rhs,
        ));
    }
    QuiverCheck { results }
}

/// Unknown matrices laid out in one coordinate vector.
struct MatVars {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    total: usize,
}

impl MatVars {
    fn new(shapes: Vec<(usize, usize)>) -> MatVars {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        MatVars {
            offsets,
            shapes,
            total,
        }
    }

    fn var(&self, m: usize, r: usize, c: usize) -> usize {
        self.offsets[m] + r * self.shapes[m].1 + c
    }

    fn extract(&self, x: &SparseVec) -> Vec<Matrix> {
        (0..self.shapes.len())
            .map(|m| {
                let (rows, cols) = self.shapes[m];
                let mut out = Matrix::zeros(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        out.set(r, c, x.get(self.var(m, r, c)));
                    }
                }
                out
            })
            .collect()
    }
}

/// A linear matrix equation `sum_k L_k U_k R_k = 0` accumulated entrywise.
struct MatEq {
    rows: usize,
    cols: usize,
    entries: Vec<SparseVec>,
}

impl MatEq {
    fn new(rows: usize, cols: usize) -> MatEq {
        MatEq {
            rows,
            cols,
            entries: vec![SparseVec::new(); rows * cols],
        }
    }

    /// Adds `sign * left * U`.
    fn known_left(&mut self, vars: &MatVars, sign: &Scalar, left: &Matrix, u: usize) {
        for r in 0..self.rows {
            for c in 0..self.cols {
                for k in 0..left.cols() {
                    let x = left.get(r, k);
                    if !x.is_zero() {
                        self.entries[r * self.cols + c].add_at(vars.var(u, k, c), &(sign * x));
                    }
                }
            }
        }
    }

    /// Adds `sign * U * right`.
    fn known_right(&mut self, vars: &MatVars, sign: &Scalar, u: usize, right: &Matrix) {
        for r in 0..self.rows {
            for c in 0..self.cols {
                for k in 0..right.rows() {
                    let x = right.get(k, c);
                    if !x.is_zero() {
                        self.entries[r * self.cols + c].add_at(vars.var(u, r, k), &(sign * x));
                    }
                }
            }
        }
    }
}

fn solve(vars: &MatVars, eqs: Vec<MatEq>) -> Vec<Vec<Matrix>> {
    let mut e = Eliminator::new(vars.total);
    for eq in eqs {
        for row in eq.entries {
            e.add_row(&row);
        }
    }
    e.nullspace().iter().map(|x| vars.extract(x)).collect()
}

/// A basis of the morphisms `r1 -> r2`: families `g_i` with
/// `g_{i+1} a_i = a'_i g_i` and `g_i b_i = b'_i g_{i+1}`.
pub fn morphisms(r1: &QuiverRep, r2: &QuiverRep) -> Vec<Vec<Matrix>> {
    let n = r1.dims.len().max(r2.dims.len());
    let vars = MatVars::new((0..n).map(|i| (r2.dim(i), r1.dim(i))).collect());
    let one = Scalar::one();
    let minus = -Scalar::one();
    let mut eqs = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut e = MatEq::new(r2.dim(i + 1), r1.dim(i));
        e.known_right(&vars, &one, i + 1, &r1.a_map(i));
        e.known_left(&vars, &minus, &r2.a_map(i), i);
        eqs.push(e);
        let mut e = MatEq::new(r2.dim(i), r1.dim(i + 1));
        e.known_right(&vars, &one, i, &r1.b_map(i));
        e.known_left(&vars, &minus, &r2.b_map(i), i + 1);
        eqs.push(e);
    }
    solve(&vars, eqs)
}

/// Whether `g` is a morphism `r1 -> r2`.
pub fn is_morphism(g: &[Matrix], r1: &QuiverRep, r2: &QuiverRep) -> bool {
    let n = r1.dims.len().max(r2.dims.len());
    let gi = |i: usize| {
        g.get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(r2.dim(i), r1.dim(i)))
    };
    (0..n.saturating_sub(1)).all(|i| {
        gi(i + 1).mul(&r1.a_map(i)) == r2.a_map(i).mul(&gi(i))
            && gi(i).mul(&r1.b_map(i)) == r2.b_map(i).mul(&gi(i + 1))
    })
}

fn combine(basis: &[Vec<Matrix>], coeffs: &[Scalar], shapes: &[(usize, usize)]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = shapes.iter().map(|&(r, c)| Matrix::zeros(r, c)).collect();
    for (g, c) in basis.iter().zip(coeffs) {
        for (o, m) in out.iter_mut().zip(g) {
            *o = o.add(&m.scale(c));
        }
    }
    out
}

/// A random element of the morphism space.
pub fn random_morphism(r1: &QuiverRep, r2: &QuiverRep, rng: &mut impl Rng) -> Vec<Matrix> {
    let basis = morphisms(r1, r2);
    let n = r1.dims.len().max(r2.dims.len());
    let shapes: Vec<(usize, usize)> = (0..n).map(|i| (r2.dim(i), r1.dim(i))).collect();
    let coeffs: Vec<Scalar> = basis
        .iter()
        .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
        .collect();
    combine(&basis, &coeffs, &shapes)
}

/// An isomorphism `r1 -> r2`, found by trying random elements of the morphism space.
pub fn find_isomorphism(r1: &QuiverRep, r2: &QuiverRep) -> Result<Vec<Matrix>> {
    let n = r1.dims.len().max(r2.dims.len());
    if (0..n).any(|i| r1.dim(i) != r2.dim(i)) {
        return Err(Error::NoIsoFound(format!(
            "dimension vectors {:?} and {:?} differ",
            r1.dims, r2.dims
        )));
    }
    let basis = morphisms(r1, r2);
    let shapes: Vec<(usize, usize)> = (0..n).map(|i| (r2.dim(i), r1.dim(i))).collect();
    let invertible = |g: &[Matrix]| g.iter().all(|m| m.rows() == 0 || m.inverse().is_some());
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for attempt in 0..32 {
        let coeffs: Vec<Scalar> = if attempt == 0 {
            vec![Scalar::one(); basis.len()]
        } else {
            basis
                .iter()
                .map(|_| Scalar::from_int(rng.gen_range(-4..=4)))
                .collect()
        };
        let g = combine(&basis, &coeffs, &shapes);
        if invertible(&g) {
            return Ok(g);
        }
    }
    Err(Error::NoIsoFound(format!(
        "no invertible morphism among {} basis maps",
        basis.len()
    )))
}

fn random_entry(rng: &mut impl Rng, field: Field) -> Scalar {
    if rng.gen_bool(0.4) {
        return Scalar::zero();
    }
    let c = Scalar::from_int(rng.gen_range(-2..=2));
    match field {
        Field::Rationals => c,
        Field::RationalFunctions => c + Scalar::from_int(rng.gen_range(-1..=1)) * Scalar::q(),
    }
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_entry(rng, field)).collect())
        .collect();
    Matrix::from_rows(rows, cols, entries)
}

/// A random representation satisfying the relations, with at most
/// `max_vertices` vertices of dimension at most `max_dim`.
///
/// One family of arrows is drawn at random; the other is a random element of
/// the solution space of the (then linear) relations.
pub fn random_rep(
    rng: &mut impl Rng,
    max_dim: usize,
    max_vertices: usize,
    field: Field,
) -> QuiverRep {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let arrows = n - 1;
    let a_shapes: Vec<(usize, usize)> = (0..arrows).map(|i| (dims[i + 1], dims[i])).collect();
    let b_shapes: Vec<(usize, usize)> = (0..arrows).map(|i| (dims[i], dims[i + 1])).collect();
    let draw_a = rng.gen_bool(0.5);
    let (fixed_shapes, free_shapes) = if draw_a {
        (&a_shapes, &b_shapes)
    } else {
        (&b_shapes, &a_shapes)
    };
    let fixed: Vec<Matrix> = fixed_shapes
        .iter()
        .map(|&(r, c)| random_matrix(rng, r, c, field))
        .collect();
    let vars = MatVars::new(free_shapes.clone());
    let one = Scalar::one();
    let minus = -Scalar::one();
    let mut eqs = Vec::new();
    if arrows > 0 {
        // b_0 a_0 = 0
        let mut e = MatEq::new(dims[0], dims[0]);
        if draw_a {
            e.known_right(&vars, &one, 0, &fixed[0]);
        } else {
            e.known_left(&vars, &one, &fixed[0], 0);
        }
        eqs.push(e);
    }
    for i in 0..arrows {
        // a_i b_i - b_{i+1} a_{i+1} = 0 at vertex i+1
        let mut e = MatEq::new(dims[i + 1], dims[i + 1]);
        if draw_a {
            e.known_left(&vars, &one, &fixed[i], i);
            if i + 1 < arrows {
                e.known_right(&vars, &minus, i + 1, &fixed[i + 1]);
            }
        } else {
            e.known_right(&vars, &one, i, &fixed[i]);
            if i + 1 < arrows {
                e.known_left(&vars, &minus, &fixed[i + 1], i + 1);
            }
        }
        eqs.push(e);
    }
    let basis = solve(&vars, eqs);
    let coeffs: Vec<Scalar> = basis
        .iter()
        .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
        .collect();
    let free = combine(&basis, &coeffs, free_shapes);
    let (a, b) = if draw_a { (fixed, free) } else { (free, fixed) };
    QuiverRep { dims, a, b, field }
}

/// `count` random representations; the `k`-th uses seed `seed + k`, so the
/// result does not depend on the strategy.
pub fn random_reps(
    seed: u64,
    count: usize,
    max_dim: usize,
    max_vertices: usize,
    field: Field,
    strategy: Strategy,
) -> Vec<QuiverRep> {
    strategy.map_range(count, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        random_rep(&mut rng, max_dim, max_vertices, field)
    })
}

/// Serialized form: matrices as lists of rows of scalar strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverRepJson {
    pub dims: Vec<usize>,
    pub a: Vec<Vec<Vec<String>>>,
    pub b: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub field: Field,
}

fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect()
}

fn matrix_from_json(
    rows: &[Vec<String>],
    nrows: usize,
    ncols: usize,
    name: &str,
) -> Result<Matrix> {
    // Empty matrices may be written as [] regardless of shape.
    if rows.is_empty() && (nrows == 0 || ncols == 0) {
        return Ok(Matrix::zeros(nrows, ncols));
    }
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput(format!(
            "{name} must be {nrows}x{ncols}"
        )));
    }
    let entries = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| parse_scalar(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(nrows, ncols, entries))
}

impl QuiverRep {
    pub fn to_json(&self) -> QuiverRepJson {
        QuiverRepJson {
            dims: self.dims.clone(),
            a: self.a.iter().map(matrix_to_json).collect(),
            b: self.b.iter().map(matrix_to_json).collect(),
            field: self.field,
        }
    }

    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self.to_json()).expect("rep serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(j: &QuiverRepJson) -> Result<QuiverRep> {
        let d = &j.dims;
        if d.is_empty() {
            return Err(Error::InvalidInput("dims must be nonempty".into()));
        }
        let arrows = d.len() - 1;
        if j.a.len() != arrows || j.b.len() != arrows {
            return Err(Error::InvalidInput(format!(
                "{} vertices need {arrows} a-maps and {arrows} b-maps",
                d.len()
            )));
        }
        let a = (0..arrows)
            .map(|i| matrix_from_json(&j.a[i], d[i + 1], d[i], &format!("a{i}")))
            .collect::<Result<Vec<_>>>()?;
        let b = (0..arrows)
            .map(|i| matrix_from_json(&j.b[i], d[i], d[i + 1], &format!("b{i}")))
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(d.clone(), a, b, j.field)
    }

    pub fn from_json_str(text: &str) -> Result<QuiverRep> {
        let j: QuiverRepJson = serde_json::from_str(text)?;
        QuiverRep::from_json(&j)
    }
}
