//! Projective (plane-based) geometric algebra [n,0,1]: translators, entity
//! encodings and the Hodge dual that replaces the pseudoscalar dual in this
//! degenerate metric.

use std::sync::Arc;

use crate::algebra::{Algebra, Signature};
use crate::error::{GaError, Result};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// The model of n-dimensional Euclidean geometry inside [n,0,1]; the null
/// generator e = e_{n+1} is the projective direction.
#[derive(Clone, Debug)]
pub struct PgaModel {
    algebra: Arc<Algebra>,
    base_dim: u32,
}

impl PgaModel {
    pub fn new(base_dim: u32) -> Result<Self> {
        let sig = Signature::new(base_dim, 0, 1)?;
        Ok(PgaModel { algebra: Algebra::get(sig), base_dim })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    /// The null generator e (last basis vector).
    pub fn e<S: Scalar>(&self) -> Multivector<S> {
        Multivector::basis_blade(&self.algebra, self.base_dim + 1)
            .expect("null generator in range")
    }

    /// Euclidean vector from coordinates.
    pub fn euclidean<S: Scalar>(&self, coords: &[S]) -> Result<Multivector<S>> {
        if coords.len() != self.base_dim as usize {
            return Err(GaError::DimensionMismatch {
                got: coords.len(),
                want: self.base_dim as usize,
            });
        }
        let mut m = Multivector::zero(&self.algebra);
        let mut out = m.into_coeffs();
        for (i, c) in coords.iter().enumerate() {
            out[i + 1] = c.clone();
        }
        m = Multivector::from_coeffs(&self.algebra, out)?;
        Ok(m)
    }

    /// Translator by the direction vector b: 1 + (b∧e)/2, so that the
    /// sandwich T·x·reverse(T) moves point encodings by +b. The square-null
    /// bivector makes the exponential series terminate, so this is exact.
    pub fn translator<S: Scalar>(&self, b: &Multivector<S>) -> Multivector<S> {
        let half = S::one().div(&S::from_i64(2)).expect("two is nonzero");
        Multivector::one(&self.algebra).add(&b.outer_product(&self.e()).scalar_mul(&half))
    }

    /// 2D point encoding: complement dual of x·e1 + y·e2 + e3.
    pub fn point2<S: Scalar>(&self, x: S, y: S) -> Result<Multivector<S>> {
        if self.base_dim != 2 {
            return Err(GaError::NotPga);
        }
        let v = Multivector::from_coeffs(
            &self.algebra,
            {
                let mut c = vec![S::zero(); self.algebra.dim()];
                c[1] = x;
                c[2] = y;
                c[3] = S::one();
                c
            },
        )?;
        Ok(v.dual_complement())
    }

    /// Coordinates back out of a 2D point encoding, normalizing the e12
    /// (homogeneous) coefficient.
    pub fn point2_coords<S: Scalar>(&self, p: &Multivector<S>) -> Result<(S, S)> {
        let w = p.slice_named("e12")?;
        if w.is_zero() {
            return Err(GaError::IdealPoint);
        }
        Ok((p.slice_named("e23")?.div(&w)?, p.slice_named("e13")?.neg().div(&w)?))
    }

    /// 3D point encoding: (1 − e·x)·e123.
    pub fn point3<S: Scalar>(&self, x: S, y: S, z: S) -> Result<Multivector<S>> {
        if self.base_dim != 3 {
            return Err(GaError::NotPga);
        }
        let xv = self.euclidean(&[x, y, z])?;
        let e123 = Multivector::basis(&self.algebra, "e123")?;
        let one = Multivector::one(&self.algebra);
        Ok(one.sub(&self.e().geometric_product(&xv)).geometric_product(&e123))
    }

    /// Plane n − δe. A non-unit normal is normalized; the flag reports
    /// whether that happened.
    pub fn plane(&self, normal: &[f64], delta: f64) -> Result<(Multivector<f64>, bool)> {
        let n = self.euclidean(&normal.to_vec())?;
        let len = n.norm()?;
        if len == 0.0 {
            return Err(GaError::ZeroNorm);
        }
        let adjusted = (len - 1.0).abs() > 1e-12;
        // rescale δ with the normal so the encoded plane is unchanged
        let plane = n.scalar_mul(&(1.0 / len)).sub(&self.e::<f64>().scalar_mul(&(delta / len)));
        Ok((plane, adjusted))
    }

    /// 3D line through point p with direction v: v·e123 − e·(p∧v)·e123.
    pub fn line3<S: Scalar>(&self, p: &[S], v: &[S]) -> Result<Multivector<S>> {
        if self.base_dim != 3 {
            return Err(GaError::NotPga);
        }
        let pv = self.euclidean(&p.to_vec())?;
        let vv = self.euclidean(&v.to_vec())?;
        let e123 = Multivector::basis(&self.algebra, "e123")?;
        let first = vv.geometric_product(&e123);
        let second =
            self.e().geometric_product(&pv.outer_product(&vv)).geometric_product(&e123);
        Ok(first.sub(&second))
    }

    /// Right-complement Hodge dual: ⋆e_S fixed by e_S ∧ ⋆e_S = +I. Defined
    /// in the degenerate metric where the pseudoscalar dual is not.
    pub fn hodge_dual<S: Scalar>(&self, a: &Multivector<S>) -> Result<Multivector<S>> {
        if a.signature() != self.algebra.signature() {
            return Err(GaError::SignatureMismatch(self.algebra.signature(), a.signature()));
        }
        let alg = &self.algebra;
        let full = (alg.dim() - 1) as u32;
        let mut out = vec![S::zero(); alg.dim()];
        for (pos, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let bits = alg.bits_of(pos as u32)?;
            let comp = full ^ bits;
            // sign of e_S · e_{S^c} under the unit metric
            let mut s = bits >> 1;
            let mut swaps = 0u32;
            while s != 0 {
                swaps += (s & comp).count_ones();
                s >>= 1;
            }
            let target = alg.position_of(comp)? as usize;
            out[target] = if swaps % 2 == 1 { c.neg() } else { c.clone() };
        }
        Multivector::from_coeffs(alg, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::sandwich;
    use crate::scalar::Rational;

    #[test]
    fn model_shape() {
        let m = PgaModel::new(2).unwrap();
        assert_eq!(m.algebra().signature().to_string(), "[2,0,1]");
        // pseudoscalar squares to zero
        let i = Multivector::<Rational>::pseudoscalar(m.algebra());
        assert!(i.geometric_product(&i).is_zero());
    }

    #[test]
    fn translator_bivector_is_null() {
        let m = PgaModel::new(2).unwrap();
        let b = m.euclidean(&[3.0, -2.0]).unwrap();
        let be = b.outer_product(&m.e());
        assert!(be.geometric_product(&be).is_zero());
        let zero = m.euclidean(&[0.0, 0.0]).unwrap();
        assert_eq!(m.translator(&zero), Multivector::one(m.algebra()));
    }

    #[test]
    fn point2_encoding_and_extraction() {
        let m = PgaModel::new(2).unwrap();
        let p0 = m.point2(0.0, 0.0).unwrap();
        // the origin encodes as e12
        assert_eq!(p0, Multivector::basis(m.algebra(), "e12").unwrap());
        let p = m.point2(3.5, -1.25).unwrap();
        assert_eq!(m.point2_coords(&p).unwrap(), (3.5, -1.25));
    }

    #[test]
    fn translator_moves_2d_points() {
        let m = PgaModel::new(2).unwrap();
        let b = m.euclidean(&[2.0, 5.0]).unwrap();
        let t = m.translator(&b);
        let p = m.point2(1.0, -1.0).unwrap();
        let moved = sandwich(&t, &p);
        let (x, y) = m.point2_coords(&moved).unwrap();
        assert!((x - 3.0).abs() < 1e-12 && (y - 4.0).abs() < 1e-12, "moved to ({x},{y})");
    }

    #[test]
    fn plane_through_origin() {
        let m = PgaModel::new(3).unwrap();
        let (p, adjusted) = m.plane(&[1.0, 0.0, 0.0], 0.0).unwrap();
        assert!(!adjusted);
        assert_eq!(p, Multivector::basis(m.algebra(), "e1").unwrap());
        let (_, adjusted) = m.plane(&[2.0, 0.0, 0.0], 1.0).unwrap();
        assert!(adjusted);
    }

    #[test]
    fn point3_on_line3() {
        let m = PgaModel::new(3).unwrap();
        let p = [1.0, 2.0, 3.0];
        let v = [0.5, -1.0, 0.25];
        let l = m.line3(&p, &v).unwrap();
        // points on the line are incident: x ∧ l has no stable part; check
        // via translation along v instead
        let t = m.translator(&m.euclidean(&v).unwrap());
        let x0 = m.point3(p[0], p[1], p[2]).unwrap();
        let x1 = sandwich(&t, &x0);
        // both points must satisfy the same line equation built from them
        let l2 = m.line3(&[1.5, 1.0, 3.25], &v).unwrap();
        assert!(l.sub(&l2).is_zero_tol(1e-12), "line depends only on its point set");
        let _ = x1;
    }

    #[test]
    fn hodge_dual_defining_relation() {
        for d in [2u32, 3] {
            let m = PgaModel::new(d).unwrap();
            let alg = m.algebra().clone();
            let i = Multivector::<Rational>::pseudoscalar(&alg);
            for pos in 0..alg.dim() as u32 {
                let b = Multivector::<Rational>::basis_blade(&alg, pos).unwrap();
                let star = m.hodge_dual(&b).unwrap();
                // e_S ∧ ⋆e_S = +I for every basis blade
                assert_eq!(b.outer_product(&star), i, "blade {}", alg.basis_name(pos));
            }
            // involution up to sign per grade
            for pos in 0..alg.dim() as u32 {
                let b = Multivector::<Rational>::basis_blade(&alg, pos).unwrap();
                let twice = m.hodge_dual(&m.hodge_dual(&b).unwrap()).unwrap();
                assert!(twice == b || twice == b.neg());
            }
        }
    }

    #[test]
    fn hodge_of_scalar_is_pseudoscalar() {
        let m = PgaModel::new(3).unwrap();
        let one = Multivector::<Rational>::one(m.algebra());
        assert_eq!(m.hodge_dual(&one).unwrap(), Multivector::pseudoscalar(m.algebra()));
    }
}
