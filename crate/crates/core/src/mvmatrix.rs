//! Matrices whose entries are multivectors of a single algebra.
//!
//! Inversion and solving go through the block scalar representation: each
//! entry is replaced by its matrix representation, giving an
//! (rows·2^n)×(cols·2^n) matrix over the scalar field; block(M·N) =
//! block(M)·block(N), so solving there and reading entries back from their
//! E_0 action columns is exact for any invertible M, with no pivoting over
//! zero-divisor entries.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::analytic::to_matrix;
use crate::error::{GaError, Result};
use crate::linalg::{self, DenseMatrix};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct MvMatrix<S: Scalar> {
    algebra: Arc<Algebra>,
    rows: usize,
    cols: usize,
    entries: Vec<Multivector<S>>,
}

impl<S: Scalar> MvMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Multivector<S>>) -> Result<Self> {
        if entries.is_empty() || entries.len() != rows * cols {
            return Err(GaError::MatrixShape(rows, cols, entries.len(), 1));
        }
        let algebra = entries[0].algebra().clone();
        for e in &entries {
            if e.signature() != algebra.signature() {
                return Err(GaError::SignatureMismatch(algebra.signature(), e.signature()));
            }
        }
        Ok(MvMatrix { algebra, rows, cols, entries })
    }

    pub fn identity(algebra: &Arc<Algebra>, n: usize) -> Self {
        let mut entries = vec![Multivector::zero(algebra); n * n];
        for i in 0..n {
            entries[i * n + i] = Multivector::one(algebra);
        }
        MvMatrix { algebra: algebra.clone(), rows: n, cols: n, entries }
    }

    pub fn zeros(algebra: &Arc<Algebra>, rows: usize, cols: usize) -> Self {
        MvMatrix {
            algebra: algebra.clone(),
            rows,
            cols,
            entries: vec![Multivector::zero(algebra); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn at(&self, r: usize, c: usize) -> &Multivector<S> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Multivector<S>) {
        assert_eq!(v.signature(), self.algebra.signature());
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Multivector<S>] {
        &self.entries
    }

    fn check_same_algebra(&self, rhs: &Self) -> Result<()> {
        if self.algebra.signature() != rhs.algebra.signature() {
            return Err(GaError::SignatureMismatch(
                self.algebra.signature(),
                rhs.algebra.signature(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_algebra(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(GaError::MatrixShape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        Ok(MvMatrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_algebra(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(GaError::MatrixShape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(MvMatrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Matrix product; entry order preserved (entries do not commute).
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_algebra(rhs)?;
        if self.cols != rhs.rows {
            return Err(GaError::MatrixShape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = MvMatrix::zeros(&self.algebra, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Multivector::zero(&self.algebra);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).geometric_product(rhs.at(k, j)));
                }
                out.entries[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = MvMatrix::zeros(&self.algebra, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.at(r, c).clone();
            }
        }
        out
    }

    /// Transpose with per-entry reversion.
    pub fn adjoint(&self) -> Self {
        let mut out = self.transpose();
        for e in out.entries.iter_mut() {
            *e = e.reverse();
        }
        out
    }

    /// The block scalar matrix: each entry replaced by its representation.
    pub fn block(&self) -> DenseMatrix<S> {
        let d = self.algebra.dim();
        let mut out = DenseMatrix::<S>::zeros(self.rows * d, self.cols * d);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let rep = to_matrix(self.at(r, c));
                for i in 0..d {
                    for j in 0..d {
                        out.set(r * d + i, c * d + j, rep.at(i, j).clone());
                    }
                }
            }
        }
        out
    }

    /// Read a (rows·2^n)×(cols·2^n) block matrix of representations back to
    /// multivector entries via their E_0 columns.
    fn from_block(
        algebra: &Arc<Algebra>,
        m: &DenseMatrix<S>,
        rows: usize,
        cols: usize,
    ) -> Result<Self> {
        let d = algebra.dim();
        let mut out = MvMatrix::zeros(algebra, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let coeffs = (0..d).map(|i| m.at(r * d + i, c * d).clone()).collect();
                out.entries[r * cols + c] = Multivector::from_coeffs(algebra, coeffs)?;
            }
        }
        Ok(out)
    }

    /// Solve M·X = B.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        self.check_same_algebra(b)?;
        if self.rows != self.cols || b.rows != self.rows {
            return Err(GaError::MatrixShape(self.rows, self.cols, b.rows, b.cols));
        }
        let block_a = self.block();
        let block_b = b.block();
        let x = linalg::solve(&block_a, &block_b).map_err(|e| match e {
            GaError::NotInvertible => GaError::MatrixNotInvertible,
            other => other,
        })?;
        MvMatrix::from_block(&self.algebra, &x, b.rows, b.cols)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&MvMatrix::identity(&self.algebra, self.rows))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl<S: Scalar> PartialEq for MvMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::scalar::Rational;

    fn alg(p: u32, q: u32, r: u32) -> Arc<Algebra> {
        Algebra::get(Signature::new(p, q, r).unwrap())
    }

    fn mv(a: &Arc<Algebra>, coeffs: &[i64]) -> Multivector<Rational> {
        Multivector::from_coeffs(a, coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
            .unwrap()
    }

    /// [e1, e1+e2; e2, e2-e1] over G(1,1,0).
    fn example_matrix() -> MvMatrix<Rational> {
        let a = alg(1, 1, 0);
        let e1 = Multivector::basis(&a, "e1").unwrap();
        let e2 = Multivector::basis(&a, "e2").unwrap();
        MvMatrix::new(
            2,
            2,
            vec![e1.clone(), e1.add(&e2), e2.clone(), e2.sub(&e1)],
        )
        .unwrap()
    }

    #[test]
    fn example_inverse_is_exact() {
        let m = example_matrix();
        let inv = m.inverse().unwrap();
        let a = m.algebra().clone();
        let id = MvMatrix::identity(&a, 2);
        assert_eq!(m.mul(&inv).unwrap(), id);
        assert_eq!(inv.mul(&m).unwrap(), id);
    }

    #[test]
    fn identity_and_mul() {
        let m = example_matrix();
        let id = MvMatrix::identity(m.algebra(), 2);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn block_homomorphism_random() {
        use rand::{Rng, SeedableRng};
        let a = alg(2, 0, 0);
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let rand_mv = |rng: &mut rand::rngs::StdRng| {
                mv(&a, &std::array::from_fn::<i64, 4, _>(|_| rng.random_range(-3..4)))
            };
            let m = MvMatrix::new(
                2,
                2,
                (0..4).map(|_| rand_mv(&mut rng)).collect(),
            )
            .unwrap();
            let n = MvMatrix::new(
                2,
                2,
                (0..4).map(|_| rand_mv(&mut rng)).collect(),
            )
            .unwrap();
            let lhs = m.mul(&n).unwrap().block();
            let rhs = m.block().mul(&n.block()).unwrap();
            assert_eq!(lhs.data, rhs.data);
        }
    }

    #[test]
    fn adjoint_antihomomorphism() {
        use rand::{Rng, SeedableRng};
        let a = alg(2, 0, 0);
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        let rand_mat = |rng: &mut rand::rngs::StdRng| {
            MvMatrix::new(
                2,
                2,
                (0..4)
                    .map(|_| {
                        mv(&a, &std::array::from_fn::<i64, 4, _>(|_| rng.random_range(-3..4)))
                    })
                    .collect(),
            )
            .unwrap()
        };
        for _ in 0..20 {
            let m = rand_mat(&mut rng);
            let n = rand_mat(&mut rng);
            assert_eq!(m.transpose().transpose(), m);
            let lhs = m.mul(&n).unwrap().adjoint();
            let rhs = n.adjoint().mul(&m.adjoint()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // 1x1 rotor matrix: adjoint is the reverse
        let r = mv(&a, &[1, 0, 0, 2]);
        let m = MvMatrix::new(1, 1, vec![r.clone()]).unwrap();
        assert_eq!(m.adjoint().at(0, 0), &r.reverse());
    }

    #[test]
    fn singular_matrix_reported() {
        let a = alg(2, 0, 0);
        let e1 = Multivector::<Rational>::basis(&a, "e1").unwrap();
        let m = MvMatrix::new(2, 2, vec![e1.clone(), e1.clone(), e1.clone(), e1]).unwrap();
        assert!(matches!(m.inverse(), Err(GaError::MatrixNotInvertible)));
    }

    #[test]
    fn solve_substitutes_back() {
        let m = example_matrix();
        let a = m.algebra().clone();
        let b = MvMatrix::new(2, 1, vec![mv(&a, &[1, 2, 0, -1]), mv(&a, &[0, 1, 1, 3])]).unwrap();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x).unwrap(), b);
    }

    #[test]
    fn json_shape() {
        let m = example_matrix();
        let j = m.to_json();
        assert_eq!(j["rows"], 2);
        assert_eq!(j["cols"], 2);
        assert_eq!(j["entries"].as_array().unwrap().len(), 4);
    }
}
