//! Matrices over an exact field and the elimination kernels built on them.
//!
//! Small matrices are stored densely; anything with more than 64 rows or
//! columns switches to sparse rows. Elimination always works on sparse rows.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

const DENSE_LIMIT: usize = 64;

type Row = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Store {
    Dense(Vec<Scalar>),
    Sparse(Vec<Row>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    store: Store,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let store = if rows > DENSE_LIMIT || cols > DENSE_LIMIT {
            Store::Sparse(vec![Row::new(); rows])
        } else {
            Store::Dense(vec![field.zero(); rows * cols])
        };
        Matrix { rows, cols, field, store }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of small integers.
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                if *v != 0 {
                    m.set(i, j, field.from_i64(*v));
                }
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.store {
            Store::Dense(v) => v[i * self.cols + j].clone(),
            Store::Sparse(rs) => rs[i].get(&j).cloned().unwrap_or_else(|| self.field.zero()),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &mut self.store {
            Store::Dense(d) => d[i * self.cols + j] = v,
            Store::Sparse(rs) => {
                if v.is_zero() {
                    rs[i].remove(&j);
                } else {
                    rs[i].insert(j, v);
                }
            }
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row_entries(&self, i: usize) -> Vec<(usize, Scalar)> {
        match &self.store {
            Store::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
            Store::Sparse(rs) => rs[i].iter().map(|(j, v)| (*j, v.clone())).collect(),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|i| self.row_entries(i).is_empty())
    }

    pub fn nonzero_count(&self) -> usize {
        (0..self.rows).map(|i| self.row_entries(i).len()).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                t.set(j, i, v);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let other_rows: Vec<Vec<(usize, Scalar)>> =
            (0..other.rows).map(|k| other.row_entries(k)).collect();
        for i in 0..self.rows {
            let mut acc = Row::new();
            for (k, a) in self.row_entries(i) {
                for (j, b) in &other_rows[k] {
                    let t = &a * b;
                    let e = acc.entry(*j).or_insert_with(|| self.field.zero());
                    *e += &t;
                }
            }
            for (j, v) in acc {
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, a) in self.row_entries(i) {
                    acc += &(&a * &v[j]);
                }
                acc
            })
            .collect())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        for (ni, &i) in rows.iter().enumerate() {
            for (j, v) in self.row_entries(i) {
                if let Some(&nj) = col_pos.get(&j) {
                    m.set(ni, nj, v);
                }
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                m.set(i, j, v);
            }
            for (j, v) in other.row_entries(i) {
                m.set(i, self.cols + j, v);
            }
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                m.set(i, j, &v * s);
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for i in 0..other.rows {
            for (j, v) in other.row_entries(i) {
                let cur = m.get(i, j);
                m.set(i, j, &cur + &v);
            }
        }
        m
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    fn sparse_rows(&self) -> Vec<Row> {
        (0..self.rows).map(|i| self.row_entries(i).into_iter().collect()).collect()
    }

    fn from_sparse_rows(field: FieldSpec, rows: Vec<Row>, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r {
                m.set(i, j, v);
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

fn row_axpy(target: &mut Row, factor: &Scalar, src: &Row) {
    for (j, v) in src {
        let t = factor * v;
        match target.get_mut(j) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    target.remove(j);
                }
            }
            None => {
                if !t.is_zero() {
                    target.insert(*j, t);
                }
            }
        }
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form. Pivot search walks columns left to right and
/// takes the topmost remaining row with a nonzero entry.
pub fn rref(m: &Matrix) -> Rref {
    let field = m.field;
    let mut rows = m.sparse_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].contains_key(&c)) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][&c].inv();
        let normalized: Row = rows[r].iter().map(|(j, v)| (*j, v * &inv)).collect();
        rows[r] = normalized;
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            if let Some(f) = row.get(&c).cloned() {
                row_axpy(row, &-&f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: Matrix::from_sparse_rows(field, rows, m.cols),
        pivots,
        rank,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Canonical echelon kernel basis, returned as the columns of a matrix.
/// Free columns are visited in increasing order; each is set to one.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let cols = kernel_vectors(m);
    Matrix::from_columns(m.field, m.cols, &cols)
}

/// Same as [`kernel_basis`] but as a list of vectors.
pub fn kernel_vectors(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field;
    let red = rref(m);
    let pivot_set: BTreeMap<usize, usize> =
        red.pivots.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut out = Vec::new();
    for free in 0..m.cols {
        if pivot_set.contains_key(&free) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (k, &pc) in red.pivots.iter().enumerate() {
            let e = red.matrix.get(k, free);
            if !e.is_zero() {
                v[pc] = -e;
            }
        }
        out.push(v);
    }
    out
}

/// Particular solution of `m x = b` with every free variable zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let field = m.field;
    let bcol = Matrix::from_columns(field, m.rows, &[b.to_vec()]);
    let aug = m.hstack(&bcol);
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols];
    for (k, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(k, m.cols);
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let red = rref(&m.hstack(&Matrix::identity(m.field, n)));
    if red.pivots.iter().take(n).copied().ne(0..n) {
        return None;
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(red.matrix.select(&rows, &cols))
}

/// An incrementally grown echelon basis of a subspace of k^n, used for
/// greedy independence tests and for expressing vectors in a fixed basis.
#[derive(Clone, Debug)]
pub struct Span {
    field: FieldSpec,
    dim: usize,
    // reduced vector, its pivot, and its expression in inserted vectors
    rows: Vec<(Row, usize, Row)>,
    inserted: usize,
}

impl Span {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Span { field, dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn to_row(v: &[Scalar]) -> Row {
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }

    fn reduce_row(&self, mut w: Row) -> (Row, Row) {
        let mut coords = Row::new();
        for (r, p, expr) in &self.rows {
            if let Some(f) = w.get(p).cloned() {
                let factor = &f * &r[p].inv();
                row_axpy(&mut w, &-&factor, r);
                row_axpy(&mut coords, &factor, expr);
            }
        }
        (w, coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce_row(Self::to_row(v)).0.is_empty()
    }

    /// Adds `v` when independent of the current span; returns whether it was.
    /// Dependent vectors still consume an insertion index.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let idx = self.inserted;
        self.inserted += 1;
        let (w, coords) = self.reduce_row(Self::to_row(v));
        if w.is_empty() {
            return false;
        }
        let p = *w.keys().next().unwrap();
        let mut expr = Row::new();
        row_axpy(&mut expr, &-&self.field.one(), &coords);
        expr.insert(idx, self.field.one());
        self.rows.push((w, p, expr));
        true
    }

    /// Coefficients expressing `v` in the inserted vectors (dependent ones
    /// get zero), or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (w, coords) = self.reduce_row(Self::to_row(v));
        if !w.is_empty() {
            return None;
        }
        let mut out = vec![self.field.zero(); self.inserted];
        for (i, c) in coords {
            out[i] = c;
        }
        Some(out)
    }
}
