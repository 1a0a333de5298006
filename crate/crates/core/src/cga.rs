//! Conformal geometric algebra [p+1,q+1,0]: the Hestenes embedding, rigid
//! motions as rotors, round/flat entities, their meets and classification.
//!
//! Internally the algebra stays metric-diagonal: the two extra generators are
//! e₊ (squares +1, last positive slot) and e₋ (squares −1, last slot). The
//! null vectors n0 = (e₋+e₊)/2 and n∞ = e₋−e₊ are derived, and a fixed linear
//! change of basis renders results in the null ("display") basis
//! n0, e₁, …, e_d, n∞ and its wedges.

use std::sync::Arc;

use crate::algebra::{Algebra, Signature};
use crate::error::{GaError, Result};
use crate::linalg::{solve, DenseMatrix};
use crate::multivector::{BasisStyle, Multivector};
use crate::scalar::Scalar;

/// Relative tolerance for flatness/nullity decisions in `classify`.
const CLASSIFY_TOL: f64 = 1e-9;

/// The conformal model of the base space [p,q,0] inside [p+1,q+1,0].
#[derive(Clone, Debug)]
pub struct CgaModel<S: Scalar> {
    algebra: Arc<Algebra>,
    base_p: u32,
    base_q: u32,
    /// Columns are the display-basis blades expressed on the internal basis.
    n_mat: DenseMatrix<S>,
    n_inv: DenseMatrix<S>,
    n0: Multivector<S>,
    ninf: Multivector<S>,
}

/// A recognized conformal entity with its Euclidean parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometricEntity {
    Point { coords: Vec<f64> },
    PointPair { p1: Vec<f64>, p2: Vec<f64> },
    Line { direction: Vec<f64>, support: Vec<f64> },
    Circle { center: Vec<f64>, radius: f64, normal: Option<Vec<f64>> },
    Plane { normal: Vec<f64>, distance: f64 },
    Sphere { center: Vec<f64>, radius: f64 },
    /// A round with negative squared radius (empty real point set).
    Imaginary { center: Vec<f64>, squared_radius: f64 },
    /// Unclassifiable input, carried through by raw coefficients.
    Unknown { coeffs: Vec<f64> },
}

impl GeometricEntity {
    pub fn kind(&self) -> &'static str {
        match self {
            GeometricEntity::Point { .. } => "point",
            GeometricEntity::PointPair { .. } => "pair",
            GeometricEntity::Line { .. } => "line",
            GeometricEntity::Circle { .. } => "circle",
            GeometricEntity::Plane { .. } => "plane",
            GeometricEntity::Sphere { .. } => "sphere",
            GeometricEntity::Imaginary { .. } => "imaginary",
            GeometricEntity::Unknown { .. } => "unknown",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GeometricEntity::Point { coords } => {
                serde_json::json!({"kind": "point", "coords": coords})
            }
            GeometricEntity::PointPair { p1, p2 } => {
                serde_json::json!({"kind": "pair", "p1": p1, "p2": p2})
            }
            GeometricEntity::Line { direction, support } => {
                serde_json::json!({"kind": "line", "direction": direction, "support": support})
            }
            GeometricEntity::Circle { center, radius, normal } => {
                let mut v =
                    serde_json::json!({"kind": "circle", "center": center, "radius": radius});
                if let Some(n) = normal {
                    v["normal"] = serde_json::json!(n);
                }
                v
            }
            GeometricEntity::Plane { normal, distance } => {
                serde_json::json!({"kind": "plane", "normal": normal, "distance": distance})
            }
            GeometricEntity::Sphere { center, radius } => {
                serde_json::json!({"kind": "sphere", "center": center, "radius": radius})
            }
            GeometricEntity::Imaginary { center, squared_radius } => serde_json::json!({
                "kind": "imaginary", "center": center, "squared_radius": squared_radius
            }),
            GeometricEntity::Unknown { coeffs } => {
                serde_json::json!({"kind": "unknown", "coeffs": coeffs})
            }
        }
    }
}

impl<S: Scalar> CgaModel<S> {
    pub fn new(base_p: u32, base_q: u32) -> Result<Self> {
        let sig = Signature::new(base_p + 1, base_q + 1, 0)?;
        let algebra = Algebra::get(sig);
        let pos_eplus = base_p + 1;
        let pos_eminus = base_p + base_q + 2;
        let eplus = Multivector::<S>::basis_blade(&algebra, pos_eplus)?;
        let eminus = Multivector::<S>::basis_blade(&algebra, pos_eminus)?;
        let half = S::one().div(&S::from_i64(2)).expect("two is nonzero");
        let n0 = eplus.add(&eminus).scalar_mul(&half);
        let ninf = eminus.sub(&eplus);

        let ngen = base_p + base_q + 2;
        let dim = algebra.dim();
        let disp = |g: u32| -> Multivector<S> {
            if g == 0 {
                n0.clone()
            } else if g == ngen - 1 {
                ninf.clone()
            } else if g <= base_p {
                Multivector::basis_blade(&algebra, g).expect("generator in range")
            } else {
                Multivector::basis_blade(&algebra, g + 1).expect("generator in range")
            }
        };
        let mut n_mat = DenseMatrix::<S>::zeros(dim, dim);
        for j in 0..dim {
            let bits = algebra.bits_of(j as u32)?;
            let mut blade = Multivector::<S>::one(&algebra);
            for g in 0..ngen {
                if bits & (1u32 << g) != 0 {
                    blade = blade.outer_product(&disp(g));
                }
            }
            for (i, c) in blade.coeffs().iter().enumerate() {
                n_mat.set(i, j, c.clone());
            }
        }
        let n_inv = solve(&n_mat, &DenseMatrix::identity(dim))?;
        Ok(CgaModel { algebra, base_p, base_q, n_mat, n_inv, n0, ninf })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn base_dim(&self) -> u32 {
        self.base_p + self.base_q
    }

    pub fn n0(&self) -> &Multivector<S> {
        &self.n0
    }

    pub fn ninf(&self) -> &Multivector<S> {
        &self.ninf
    }

    fn pos_eplus(&self) -> usize {
        (self.base_p + 1) as usize
    }

    fn pos_eminus(&self) -> usize {
        (self.base_p + self.base_q + 2) as usize
    }

    /// Internal grade-1 position of the k-th base direction (1-based display
    /// index); the slot of e₊ is skipped.
    fn gen_position(&self, k: u32) -> u32 {
        if k <= self.base_p {
            k
        } else {
            k + 1
        }
    }

    /// The g-th display-basis vector: n0, the base directions, then n∞.
    pub fn display_vector(&self, g: u32) -> Result<Multivector<S>> {
        let ngen = self.base_dim() + 2;
        if g >= ngen {
            return Err(GaError::IndexOutOfRange(g as usize));
        }
        Ok(if g == 0 {
            self.n0.clone()
        } else if g == ngen - 1 {
            self.ninf.clone()
        } else {
            Multivector::basis_blade(&self.algebra, self.gen_position(g))?
        })
    }

    /// Base-space vector from coordinates.
    pub fn euclidean(&self, coords: &[S]) -> Result<Multivector<S>> {
        let d = self.base_dim() as usize;
        if coords.len() != d {
            return Err(GaError::DimensionMismatch { got: coords.len(), want: d });
        }
        let mut out = vec![S::zero(); self.algebra.dim()];
        for (k, c) in coords.iter().enumerate() {
            out[self.gen_position(k as u32 + 1) as usize] = c.clone();
        }
        Multivector::from_coeffs(&self.algebra, out)
    }

    /// Coordinates of a pure base-space vector; any component outside the
    /// base grade-1 slots is rejected.
    pub fn vector_coords(&self, x: &Multivector<S>) -> Result<Vec<S>> {
        let d = self.base_dim();
        let mut coords = vec![S::zero(); d as usize];
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (1..=d).find(|&k| self.gen_position(k) as usize == i) {
                Some(k) => coords[(k - 1) as usize] = c.clone(),
                None => return Err(GaError::NotEuclideanVector),
            }
        }
        Ok(coords)
    }

    /// Hestenes embedding: push(x) = n0 + x + ½x²n∞, a null vector.
    pub fn push(&self, coords: &[S]) -> Result<Multivector<S>> {
        let x = self.euclidean(coords)?;
        let sq = x.norm_squared();
        let half = S::one().div(&S::from_i64(2)).expect("two is nonzero");
        Ok(x.add(&self.n0).add(&self.ninf.scalar_mul(&sq.mul(&half))))
    }

    /// Inverse of `push` after dividing out the n0 coefficient.
    pub fn pull(&self, x: &Multivector<S>) -> Result<Vec<S>> {
        let a = x.coeffs()[self.pos_eplus()].add(&x.coeffs()[self.pos_eminus()]);
        if a.is_zero() {
            return Err(GaError::IdealPoint);
        }
        (1..=self.base_dim())
            .map(|k| x.coeffs()[self.gen_position(k) as usize].div(&a))
            .collect()
    }

    /// Translation rotor 1 − (v∧n∞)/2; sandwiching moves pushed points by v.
    pub fn translator(&self, v: &[S]) -> Result<Multivector<S>> {
        let vv = self.euclidean(v)?;
        let half = S::one().div(&S::from_i64(2)).expect("two is nonzero");
        Ok(Multivector::one(&self.algebra)
            .sub(&vv.outer_product(&self.ninf).scalar_mul(&half)))
    }

    pub fn point_pair(&self, p1: &[S], p2: &[S]) -> Result<Multivector<S>> {
        Ok(self.push(p1)?.outer_product(&self.push(p2)?))
    }

    pub fn line(&self, p1: &[S], p2: &[S]) -> Result<Multivector<S>> {
        Ok(self.point_pair(p1, p2)?.outer_product(&self.ninf))
    }

    pub fn circle(&self, p1: &[S], p2: &[S], p3: &[S]) -> Result<Multivector<S>> {
        Ok(self.point_pair(p1, p2)?.outer_product(&self.push(p3)?))
    }

    pub fn plane3(&self, p1: &[S], p2: &[S], p3: &[S]) -> Result<Multivector<S>> {
        Ok(self.circle(p1, p2, p3)?.outer_product(&self.ninf))
    }

    pub fn sphere(&self, p1: &[S], p2: &[S], p3: &[S], p4: &[S]) -> Result<Multivector<S>> {
        Ok(self.circle(p1, p2, p3)?.outer_product(&self.push(p4)?))
    }

    /// Inner (dual) representation of a sphere: push(c) − ½r²n∞.
    pub fn sphere_inner(&self, center: &[S], radius: &S) -> Result<Multivector<S>> {
        let half = S::one().div(&S::from_i64(2)).expect("two is nonzero");
        let r2h = radius.mul(radius).mul(&half);
        Ok(self.push(center)?.sub(&self.ninf.scalar_mul(&r2h)))
    }

    /// Meet of entities given by their inner (dual) representations:
    /// the final pseudoscalar dual of d1∧d2[∧d3].
    pub fn intersect(
        &self,
        d1: &Multivector<S>,
        d2: &Multivector<S>,
        d3: Option<&Multivector<S>>,
    ) -> Result<Multivector<S>> {
        let mut w = d1.outer_product(d2);
        if let Some(d) = d3 {
            w = w.outer_product(d);
        }
        w.dual_pseudoscalar()
    }

    /// Coefficients on the null display basis (n0, e₁…, n∞ and wedges).
    pub fn to_display(&self, x: &Multivector<S>) -> Result<Multivector<S>> {
        if x.signature() != self.algebra.signature() {
            return Err(GaError::SignatureMismatch(self.algebra.signature(), x.signature()));
        }
        Multivector::from_coeffs(&self.algebra, apply(&self.n_inv, x.coeffs()))
    }

    /// Multivector whose display coefficients are the given vector.
    pub fn from_display(&self, coeffs: &[S]) -> Result<Multivector<S>> {
        if coeffs.len() != self.algebra.dim() {
            return Err(GaError::DimensionMismatch {
                got: coeffs.len(),
                want: self.algebra.dim(),
            });
        }
        Multivector::from_coeffs(&self.algebra, apply(&self.n_mat, coeffs))
    }

    /// Verbose rendering on the null basis ("( 1 )*n0+( 1 )*e1+…").
    pub fn display_text(&self, x: &Multivector<S>) -> Result<String> {
        Ok(self.to_display(x)?.clean(1e-12).to_text(BasisStyle::Conformal))
    }
}

fn apply<S: Scalar>(m: &DenseMatrix<S>, v: &[S]) -> Vec<S> {
    (0..m.rows)
        .map(|i| {
            let mut acc = S::zero();
            for (j, vj) in v.iter().enumerate() {
                let a = m.at(i, j);
                if !a.is_zero() && !vj.is_zero() {
                    acc = acc.add(&a.mul(vj));
                }
            }
            acc
        })
        .collect()
}

impl CgaModel<f64> {
    /// Inner (dual) representation of a plane/2D-line: n̂ + δn∞, where
    /// n·x = δ on the flat. A non-unit normal is rescaled together with δ.
    pub fn plane_inner(&self, normal: &[f64], delta: f64) -> Result<Multivector<f64>> {
        let n = self.euclidean(normal)?;
        let len = n.norm()?;
        if len == 0.0 {
            return Err(GaError::ZeroNorm);
        }
        Ok(n.scalar_mul(&(1.0 / len)).add(&self.ninf.scalar_mul(&(delta / len))))
    }

    /// Angle between two same-grade representations, from the grade-0 part of
    /// their product over the non-reversed norms ⟨o²⟩₀.
    pub fn angle_between(
        &self,
        o1: &Multivector<f64>,
        o2: &Multivector<f64>,
    ) -> Result<f64> {
        let n1 = *o1.geometric_product(o1).scalar_part();
        let n2 = *o2.geometric_product(o2).scalar_part();
        for (o, n) in [(o1, n1), (o2, n2)] {
            let scale: f64 = o.coeffs().iter().map(|c| c * c).sum();
            if n.abs() <= CLASSIFY_TOL * scale {
                return Err(GaError::ZeroNorm);
            }
            if n < 0.0 {
                return Err(GaError::IndefiniteNorm);
            }
        }
        let num = *o1.geometric_product(o2).scalar_part();
        Ok((num / (n1 * n2).sqrt()).clamp(-1.0, 1.0).acos())
    }

    /// Grade-1 projection rescaled to unit n0 coefficient.
    fn normalize_point(&self, x: &Multivector<f64>) -> Result<Multivector<f64>> {
        let v = x.grade_projection(1)?;
        let scale = v.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let a = v.coeffs()[self.pos_eplus()] + v.coeffs()[self.pos_eminus()];
        if scale == 0.0 || a.abs() <= CLASSIFY_TOL * scale {
            return Err(GaError::IdealPoint);
        }
        Ok(v.scalar_mul(&(1.0 / a)))
    }

    /// Endpoints of a point-pair bivector via the projector P = ½(1 + B̂),
    /// B̂ = B/√⟨B²⟩₀: b₁ = −P̃(B·n∞)P and b₂ = P(B·n∞)P̃, each normalized
    /// to unit n0 coefficient. A tangent pair (⟨B²⟩₀ ≈ 0) collapses to the
    /// single point ∝ ⟨B n∞ B⟩₁, returned twice.
    pub fn extract_point_pair(
        &self,
        b: &Multivector<f64>,
    ) -> Result<(Multivector<f64>, Multivector<f64>)> {
        let scale: f64 = b.coeffs().iter().map(|c| c * c).sum();
        if scale == 0.0 {
            return Err(GaError::NotConformalEntity);
        }
        let s = *b.geometric_product(b).scalar_part();
        let tol = CLASSIFY_TOL * scale;
        if s > tol {
            let bhat = b.scalar_mul(&(1.0 / s.sqrt()));
            let p = Multivector::one(&self.algebra).add(&bhat).scalar_mul(&0.5);
            let m = b.inner_product(&self.ninf);
            let b1 = p.reverse().geometric_product(&m).geometric_product(&p).neg();
            let b2 = p.geometric_product(&m).geometric_product(&p.reverse());
            Ok((self.normalize_point(&b1)?, self.normalize_point(&b2)?))
        } else if s < -tol {
            Err(GaError::ImaginaryPointPair(s))
        } else {
            let pt = b
                .geometric_product(&self.ninf)
                .geometric_product(b)
                .grade_projection(1)?;
            let pt = self.normalize_point(&pt)?;
            Ok((pt.clone(), pt))
        }
    }

    /// Recover the kind and Euclidean parameters of a conformal entity
    /// (Euclidean base spaces of dimension 2 or 3).
    pub fn classify(&self, x: &Multivector<f64>) -> Result<GeometricEntity> {
        if x.signature() != self.algebra.signature() {
            return Err(GaError::SignatureMismatch(self.algebra.signature(), x.signature()));
        }
        let d = self.base_dim();
        if self.base_q != 0 || !(d == 2 || d == 3) {
            return Err(GaError::NotConformalEntity);
        }
        let scale = x.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return Err(GaError::NotConformalEntity);
        }
        let tol = CLASSIFY_TOL * scale;
        let mut grade = None;
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.abs() > tol {
                let g = self.algebra.grade_of(i as u32);
                if grade.is_some_and(|k| k != g) {
                    return Err(GaError::NotConformalEntity);
                }
                grade = Some(g);
            }
        }
        let flat = x.outer_product(&self.ninf).is_zero_tol(tol);
        match grade {
            Some(1) => self.classify_round1(x),
            Some(2) if !flat => self.classify_pair(x),
            Some(3) if flat => self.classify_line(x, tol),
            Some(3) if d == 3 => self.classify_circle3(x, tol),
            Some(3) => self.classify_round1(&x.dual_pseudoscalar()?),
            Some(4) if d == 3 => self.classify_round1(&x.dual_pseudoscalar()?),
            _ => Err(GaError::NotConformalEntity),
        }
    }

    /// Grade-1 branch: nonzero n0 coefficient means a round (point, sphere,
    /// 2D circle or imaginary); zero means a flat (plane, 2D line).
    fn classify_round1(&self, x: &Multivector<f64>) -> Result<GeometricEntity> {
        let d = self.base_dim() as usize;
        let scale = x.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return Err(GaError::NotConformalEntity);
        }
        let tol = CLASSIFY_TOL * scale;
        let cp = x.coeffs()[self.pos_eplus()];
        let cm = x.coeffs()[self.pos_eminus()];
        let a = cp + cm;
        if a.abs() > tol {
            let xn = x.scalar_mul(&(1.0 / a));
            let r2 = *xn.geometric_product(&xn).scalar_part();
            let center: Vec<f64> = (0..d).map(|i| xn.coeffs()[i + 1]).collect();
            let s = xn.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let rtol = CLASSIFY_TOL * s * s;
            if r2 < -rtol {
                Ok(GeometricEntity::Imaginary { center, squared_radius: r2 })
            } else if r2 <= rtol {
                Ok(GeometricEntity::Point { coords: center })
            } else if d == 3 {
                Ok(GeometricEntity::Sphere { center, radius: r2.sqrt() })
            } else {
                Ok(GeometricEntity::Circle { center, radius: r2.sqrt(), normal: None })
            }
        } else {
            let n: Vec<f64> = (0..d).map(|i| x.coeffs()[i + 1]).collect();
            let len = n.iter().map(|v| v * v).sum::<f64>().sqrt();
            if len <= tol {
                return Err(GaError::NotConformalEntity);
            }
            let delta = (cm - cp) / 2.0 / len;
            let normal: Vec<f64> = n.iter().map(|v| v / len).collect();
            if d == 3 {
                Ok(GeometricEntity::Plane { normal, distance: delta })
            } else {
                Ok(GeometricEntity::Line {
                    direction: vec![-normal[1], normal[0]],
                    support: normal.iter().map(|v| v * delta).collect(),
                })
            }
        }
    }

    fn classify_pair(&self, x: &Multivector<f64>) -> Result<GeometricEntity> {
        match self.extract_point_pair(x) {
            Ok((p1, p2)) => Ok(GeometricEntity::PointPair {
                p1: self.pull(&p1)?,
                p2: self.pull(&p2)?,
            }),
            Err(GaError::ImaginaryPointPair(s)) => {
                let flat = x.outer_product(&self.ninf);
                let den = *flat.geometric_product(&flat).scalar_part();
                let center_pt = x
                    .geometric_product(&self.ninf)
                    .geometric_product(x)
                    .grade_projection(1)?;
                Ok(GeometricEntity::Imaginary {
                    center: self.pull(&self.normalize_point(&center_pt)?)?,
                    squared_radius: s / den,
                })
            }
            Err(e) => Err(e),
        }
    }

    /// Flat grade-3 entities: direction from the n0∧eᵢ∧n∞ display slots,
    /// moment p∧v from the eᵢ∧eⱼ∧n∞ slots, support −(v⌋M)/v².
    fn classify_line(&self, x: &Multivector<f64>, tol: f64) -> Result<GeometricEntity> {
        let d = self.base_dim() as usize;
        let last = 1u32 << (d + 1);
        let dc = self.to_display(x)?;
        let dc = dc.coeffs();
        let alg = &self.algebra;
        let mut direction = vec![0.0f64; d];
        for (i, v) in direction.iter_mut().enumerate() {
            let bits = 1 | (1u32 << (i + 1)) | last;
            *v = dc[alg.position_of(bits)? as usize];
        }
        let len = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len <= tol {
            return Err(GaError::NotConformalEntity);
        }
        let v_mv = self.euclidean(&direction)?;
        let mut moment = vec![0.0f64; alg.dim()];
        for i in 0..d {
            for j in i + 1..d {
                let bits = (1u32 << (i + 1)) | (1u32 << (j + 1)) | last;
                let c = dc[alg.position_of(bits)? as usize];
                moment[alg.position_of((1u32 << i) | (1u32 << j))? as usize] = c;
            }
        }
        let m_mv = Multivector::from_coeffs(alg, moment)?;
        let support_mv =
            v_mv.left_contraction(&m_mv).scalar_mul(&(-1.0 / v_mv.norm_squared()));
        Ok(GeometricEntity::Line {
            direction: direction.iter().map(|v| v / len).collect(),
            support: (0..d).map(|i| support_mv.coeffs()[i + 1]).collect(),
        })
    }

    /// Round grade-3 entities in 3D: dualize, split off the carrier plane
    /// π* = n∞⌋c*, then read center/radius from the minimal enclosing sphere
    /// π*⌋c* (a dual sphere centered on the carrier plane).
    fn classify_circle3(&self, x: &Multivector<f64>, tol: f64) -> Result<GeometricEntity> {
        let c_dual = x.dual_pseudoscalar()?;
        let pi_dual = self.ninf.left_contraction(&c_dual);
        if pi_dual.is_zero_tol(tol) {
            return Err(GaError::NotConformalEntity);
        }
        let normal = match self.classify_round1(&pi_dual)? {
            GeometricEntity::Plane { normal, .. } => normal,
            _ => return Err(GaError::NotConformalEntity),
        };
        match self.classify_round1(&pi_dual.left_contraction(&c_dual))? {
            GeometricEntity::Sphere { center, radius } => {
                Ok(GeometricEntity::Circle { center, radius, normal: Some(normal) })
            }
            GeometricEntity::Point { coords } => Ok(GeometricEntity::Point { coords }),
            GeometricEntity::Imaginary { center, squared_radius } => {
                Ok(GeometricEntity::Imaginary { center, squared_radius })
            }
            _ => Err(GaError::NotConformalEntity),
        }
    }

    /// Classify a batch of multivectors into the geometry JSON array;
    /// unclassifiable inputs are recorded with their raw coefficients.
    pub fn emit_geometry(&self, entities: &[Multivector<f64>]) -> serde_json::Value {
        serde_json::Value::Array(
            entities
                .iter()
                .map(|e| match self.classify(e) {
                    Ok(g) => g.to_json(),
                    Err(_) => {
                        GeometricEntity::Unknown { coeffs: e.coeffs().to_vec() }.to_json()
                    }
                })
                .collect(),
        )
    }
}
