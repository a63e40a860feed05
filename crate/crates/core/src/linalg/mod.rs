//! Dense real linear algebra used by the quadrature, Green's-function and
//! S-matrix modules. Eigenvectors follow a fixed sign convention: the
//! component of largest magnitude is positive.

mod dense;
mod general;
mod generalized;
mod solve;
mod tridiag;

pub use dense::eig_sym_dense;
pub use general::eigvals_general;
pub use generalized::{cholesky, eig_sym_generalized, GeneralizedEigen};
pub use solve::{solve_dense, Lu};
pub use tridiag::{eig_sym_tridiagonal, eigvals_sym_tridiagonal, tridiagonal_first_components};

use std::ops::{Index, IndexMut};

/// Real symmetric matrix in packed lower-triangular storage, so that
/// `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![0.0; order * (order + 1) / 2] }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from `f(i, j)` evaluated on the lower triangle `i >= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[packed(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[packed(i, j)] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[packed(i, j)] += v;
    }

    /// Largest absolute entry.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.order, other.order);
        SymMatrix { order: self.order, data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect() }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.order, self.order, |i, j| self.get(i, j))
    }

    /// Principal submatrix with row and column `skip` removed.
    pub fn without(&self, skip: usize) -> SymMatrix {
        let keep: Vec<usize> = (0..self.order).filter(|&k| k != skip).collect();
        SymMatrix::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }

    /// Leading `n x n` block.
    pub fn leading(&self, n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| self.get(i, j))
    }

    /// `true` when all entries with `|i - j| > 1` vanish.
    pub fn is_tridiagonal(&self) -> bool {
        (0..self.order).all(|i| (0..i.saturating_sub(1)).all(|j| self.get(i, j) == 0.0))
    }
}

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum()).collect()
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Submatrix with row `r` and column `c` removed.
    pub fn without(&self, r: usize, c: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&k| k != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&k| k != c).collect();
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub(crate) fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Sorts eigenpairs ascending and applies the sign convention.
pub(crate) fn finish(values: &mut Vec<f64>, vectors: &mut Matrix) {
    let n = values.len();
    for i in 0..n {
        let mut k = i;
        for j in i + 1..n {
            if values[j] < values[k] {
                k = j;
            }
        }
        if k != i {
            values.swap(i, k);
            vectors.swap_columns(i, k);
        }
    }
    normalize_signs(vectors);
}

pub(crate) fn normalize_signs(vectors: &mut Matrix) {
    for j in 0..vectors.cols() {
        let mut best = 0.0f64;
        let mut sign = 1.0;
        for i in 0..vectors.rows() {
            let v = vectors[(i, j)];
            if v.abs() > best {
                best = v.abs();
                sign = v.signum();
            }
        }
        if sign < 0.0 {
            vectors.negate_column(j);
        }
    }
}
