//! Dense Gaussian elimination over any [`Scalar`] domain.
//!
//! Pivot choice goes through `pivot_weight`: the float domain reports |x| so
//! this is partial pivoting; exact domains report 0/1 so the first nonzero
//! pivot is taken (any nonzero pivot is exact).

use crate::error::{GaError, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix, just enough structure for solving.
#[derive(Clone, Debug)]
pub struct DenseMatrix<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, rhs: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
        if self.cols != rhs.rows {
            return Err(GaError::MatrixShape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = DenseMatrix::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.at(i, j).add(&a.mul(rhs.at(k, j)));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }
}

/// Solve A·X = B in place for possibly many right-hand sides. `a` is square
/// n×n, `b` is n×m; returns X (n×m). Reports `NotInvertible` when no usable
/// pivot exists and `IllConditioned` when the float pivot collapses relative
/// to the largest entry of A.
pub fn solve<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    if a.rows != a.cols || a.rows != b.rows {
        return Err(GaError::MatrixShape(a.rows, a.cols, b.rows, b.cols));
    }
    let n = a.rows;
    let m = b.cols;
    let mut a = a.clone();
    let mut x = b.clone();

    let scale = a.data.iter().map(|v| v.pivot_weight()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(GaError::NotInvertible);
    }

    for col in 0..n {
        let mut pivot_row = col;
        let mut best = a.at(col, col).pivot_weight();
        for r in col + 1..n {
            let w = a.at(r, col).pivot_weight();
            if w > best {
                best = w;
                pivot_row = r;
            }
        }
        if best == 0.0 {
            return Err(GaError::NotInvertible);
        }
        if best / scale < 1e-13 {
            return Err(GaError::IllConditioned(scale / best));
        }
        if pivot_row != col {
            for c in 0..n {
                a.data.swap(pivot_row * n + c, col * n + c);
            }
            for c in 0..m {
                x.data.swap(pivot_row * m + c, col * m + c);
            }
        }
        let pivot = a.at(col, col).clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.at(r, col).div(&pivot)?;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a.at(r, c).sub(&factor.mul(a.at(col, c)));
                a.set(r, c, v);
            }
            for c in 0..m {
                let v = x.at(r, c).sub(&factor.mul(x.at(col, c)));
                x.set(r, c, v);
            }
        }
    }
    for r in 0..n {
        let pivot = a.at(r, r).clone();
        for c in 0..m {
            let v = x.at(r, c).div(&pivot)?;
            x.set(r, c, v);
        }
    }
    Ok(x)
}
