//! Column-compressed sparse matrices over ℚ.

use super::{vector, Matrix, Scalar, Vector};

/// Sparse column: `(row, value)` pairs, rows strictly increasing, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(|i| vec![(i, Scalar::one())]).collect() }
    }

    /// Columns must already be sorted by row and free of zeros.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(r, v)| *r < rows && !v.is_zero())));
        SparseMatrix { rows, columns }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols()).map(|j| compress(&m.col(j))).collect();
        SparseMatrix { rows: m.rows(), columns }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn col_dense(&self, j: usize) -> Vector {
        let mut v = vector::zeros(self.rows);
        for (i, s) in &self.columns[j] {
            v[*i] = s.clone();
        }
        v
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let c = &self.columns[j];
        c.binary_search_by_key(&i, |(r, _)| *r).map_or_else(|_| Scalar::zero(), |k| c[k].1.clone())
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.rows);
        for (j, xj) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (i, v) in &self.columns[j] {
                out[*i] += &(v * xj);
            }
        }
        out
    }

    /// `Σ cₖ Mₖ` for matrices of equal shape.
    pub fn combination(mats: &[SparseMatrix], coeffs: &[Scalar], rows: usize, cols: usize) -> SparseMatrix {
        let mut acc = Accumulator::new(rows);
        let columns = (0..cols)
            .map(|j| {
                for (m, c) in mats.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()) {
                    acc.add_sparse(c, m.col(j));
                }
                acc.take()
            })
            .collect();
        SparseMatrix { rows, columns }
    }
}

/// Drops zero entries of a dense vector.
pub fn compress(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

/// Dense scratch vector that remembers which entries were touched, for
/// building sparse columns by repeated `axpy`.
#[derive(Debug, Clone)]
pub struct Accumulator {
    values: Vec<Scalar>,
    touched: Vec<usize>,
    seen: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator { values: vector::zeros(n), touched: Vec::new(), seen: vec![false; n] }
    }

    pub fn add(&mut self, i: usize, v: &Scalar) {
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
        }
        self.values[i] += v;
    }

    pub fn add_sparse(&mut self, c: &Scalar, x: &[(usize, Scalar)]) {
        for (i, v) in x {
            self.add(*i, &(c * v));
        }
    }

    /// Returns the accumulated sparse vector and resets the scratch space.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let v = std::mem::take(&mut self.values[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_round_trip_and_products() {
        let m = Matrix::from_int_rows(&[&[0, 2, 0], &[1, 0, -3]]);
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.nnz(), 3);
        assert_eq!(s.to_dense(), m);
        assert_eq!(s.get(1, 2), Scalar::from_int(-3));
        assert_eq!(s.get(0, 0), Scalar::zero());
        let x = vector::from_ints(&[1, 2, 3]);
        assert_eq!(s.mul_vec(&x), m.mul_vec(&x));
        let c = SparseMatrix::combination(&[s.clone(), s.clone()], &[Scalar::from_int(2), Scalar::from_int(-2)], 2, 3);
        assert_eq!(c.nnz(), 0);
    }

    #[test]
    fn accumulator_cancels_and_sorts() {
        let mut a = Accumulator::new(4);
        a.add(3, &Scalar::one());
        a.add(1, &Scalar::from_int(2));
        a.add(3, &-Scalar::one());
        assert_eq!(a.take(), vec![(1, Scalar::from_int(2))]);
        assert!(a.take().is_empty());
    }
}
