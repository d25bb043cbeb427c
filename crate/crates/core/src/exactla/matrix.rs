//! Dense exact matrices and the elimination routines built on reduced row
//! echelon form.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::vector::{self, Vector};
use super::Scalar;
use crate::par;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Pivot-column basis of a column space and the coordinates of every column in it.
#[derive(Debug, Clone)]
pub struct ImageBasis {
    /// Indices of the original columns forming the basis.
    pub pivots: Vec<usize>,
    pub basis: Vec<Vector>,
    /// `coords[j]` expresses column `j` in `basis`.
    pub coords: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries must be rows × cols");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| vector::from_ints(r)).collect())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Scalar::one())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vector::add(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vector::sub(&self.data, &other.data) }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        vector::axpy(&mut self.data, c, &other.data);
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let (n, m) = (self.rows, other.cols);
        let rows = par::map_range_weighted(n, n * m * self.cols, |i| {
            let mut out = vector::zeros(m);
            for (k, a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    vector::axpy(&mut out, a, other.row(k));
                }
            }
            out
        });
        Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows).map(|i| vector::dot(self.row(i), v)).collect()
    }

    /// `vᵀ · self`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len());
        let mut out = vector::zeros(self.cols);
        for (i, c) in v.iter().enumerate() {
            vector::axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        vector::dot(x, &self.mul_vec(y))
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).map(|i| &self[(i, i)]).sum()
    }

    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Matrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Gauss–Jordan elimination. Among the nonzero candidates at or below the
    /// current row, the entry of least height is used as the pivot, which keeps
    /// coefficient growth down; the reduced form itself does not depend on it.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).filter(|&i| !m[(i, c)].is_zero()).min_by_key(|&i| m[(i, c)].height()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..cols {
                let v = &m.data[r * cols + j] * &inv;
                m.data[r * cols + j] = v;
            }
            let pivot_row: Vec<Scalar> = m.row(r)[c..].to_vec();
            let work = rows * (cols - c);
            par::for_each_chunk_mut(&mut m.data, cols, work, |i, row| {
                if i == r || row[c].is_zero() {
                    return;
                }
                let f = row[c].clone();
                for (x, pv) in row[c..].iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *x -= &f * pv;
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Right null space; free variables set to 1 in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vector::zeros(self.cols);
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    /// The reduced-echelon particular solution of `self · x = b`, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(self.rows, b.len(), "right-hand side length differs from row count");
        let aug = Matrix::hstack(&[self, &Matrix::from_columns(self.rows, &[b.to_vec()])]);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self · X = B` column by column with a single elimination.
    pub fn solve_many(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Matrix::hstack(&[self, rhs]);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last().is_some_and(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn image_basis(&self) -> ImageBasis {
        let Rref { matrix: r, pivots } = self.rref();
        let k = pivots.len();
        ImageBasis {
            basis: pivots.iter().map(|&p| self.col(p)).collect(),
            coords: (0..self.cols).map(|j| (0..k).map(|i| r[(i, j)].clone()).collect()).collect(),
            pivots,
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_many(&Matrix::identity(self.rows)).filter(|_| self.rank() == self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Canonical basis of the span of `vectors` (each of length `n`): the nonzero
/// rows of the reduced echelon form of the matrix having them as rows.
pub fn span_basis(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), n);
    let r = m.rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Coordinates of `v` in the (independent) `basis`, or `None` if `v` is outside its span.
pub fn coordinates(n: usize, basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    if basis.is_empty() {
        return vector::is_zero(v).then(Vec::new);
    }
    Matrix::from_columns(n, basis).solve(v)
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(n: usize, vectors: &[Vector], v: &[Scalar]) -> bool {
    if vectors.is_empty() {
        return vector::is_zero(v);
    }
    Matrix::from_columns(n, vectors).solve(v).is_some()
}
