//! Dense multivectors and the ring, involution and grade operations.

use std::sync::Arc;

use crate::algebra::{Algebra, Signature};
use crate::error::{GaError, Result};
use crate::scalar::Scalar;

/// How basis blades are named in text output.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisStyle {
    Plain,
    /// Conformal display: first/last generators print as n0/ni.
    Conformal,
}

/// A multivector: one coefficient per basis blade, in graded-lexicographic
/// position order. Values are immutable; every operation returns a new one.
///
/// Binary operations require both operands to live in the same algebra and
/// panic otherwise — the public construction paths (sessions, models, apps)
/// all work inside a single algebra, so a mismatch is a programming error,
/// not user input.
#[derive(Clone, Debug)]
pub struct Multivector<S: Scalar> {
    algebra: Arc<Algebra>,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Multivector { algebra: algebra.clone(), coeffs: vec![S::zero(); algebra.dim()] }
    }

    pub fn scalar(algebra: &Arc<Algebra>, value: S) -> Self {
        let mut m = Multivector::zero(algebra);
        m.coeffs[0] = value;
        m
    }

    pub fn one(algebra: &Arc<Algebra>) -> Self {
        Multivector::scalar(algebra, S::one())
    }

    /// Basis blade at a 0-based position, with coefficient one.
    pub fn basis_blade(algebra: &Arc<Algebra>, position: u32) -> Result<Self> {
        if position as usize >= algebra.dim() {
            return Err(GaError::IndexOutOfRange(position as usize));
        }
        let mut m = Multivector::zero(algebra);
        m.coeffs[position as usize] = S::one();
        Ok(m)
    }

    pub fn basis(algebra: &Arc<Algebra>, name: &str) -> Result<Self> {
        Multivector::basis_blade(algebra, algebra.position_of_name(name)?)
    }

    pub fn pseudoscalar(algebra: &Arc<Algebra>) -> Self {
        Multivector::basis_blade(algebra, algebra.pseudoscalar_position())
            .expect("pseudoscalar position is in range")
    }

    pub fn from_coeffs(algebra: &Arc<Algebra>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(GaError::DimensionMismatch { got: coeffs.len(), want: algebra.dim() });
        }
        Ok(Multivector { algebra: algebra.clone(), coeffs })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn signature(&self) -> Signature {
        self.algebra.signature()
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Position-ordered coefficients (0-based).
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Scalar (grade-0) coefficient.
    pub fn scalar_part(&self) -> &S {
        &self.coeffs[0]
    }

    fn assert_same_algebra(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.algebra, &rhs.algebra)
                || self.algebra.signature() == rhs.algebra.signature(),
            "signature mismatch: {} vs {}",
            self.algebra.signature(),
            rhs.algebra.signature()
        );
    }

    fn map(&self, f: impl Fn(usize, &S) -> S) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| f(i, c)).collect();
        Multivector { algebra: self.algebra.clone(), coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_algebra(rhs);
        self.map(|i, c| c.add(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_algebra(rhs);
        self.map(|i, c| c.sub(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(|_, c| c.neg())
    }

    pub fn scalar_mul(&self, s: &S) -> Self {
        self.map(|_, c| c.mul(s))
    }

    pub fn scalar_div(&self, s: &S) -> Result<Self> {
        if s.is_zero() {
            return Err(GaError::DivisionByZero);
        }
        Ok(self.map(|_, c| c.div(s).expect("nonzero divisor")))
    }

    /// Bilinear blade expansion keeping only terms the filter accepts.
    /// The filter sees (grade of A-blade, grade of B-blade, grade of result).
    fn product_filtered(&self, rhs: &Self, keep: impl Fn(u32, u32, u32) -> bool) -> Self {
        self.assert_same_algebra(rhs);
        let alg = &self.algebra;
        let mut out = vec![S::zero(); self.dim()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ga = alg.grade_of(a as u32);
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let p = alg.blade_product(a as u32, b as u32);
                if p.coefficient == 0 {
                    continue;
                }
                if !keep(ga, alg.grade_of(b as u32), alg.grade_of(p.position)) {
                    continue;
                }
                let term = ca.mul(cb);
                let slot = &mut out[p.position as usize];
                *slot = if p.coefficient > 0 { slot.add(&term) } else { slot.sub(&term) };
            }
        }
        Multivector { algebra: self.algebra.clone(), coeffs: out }
    }

    pub fn geometric_product(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |_, _, _| true)
    }

    pub fn outer_product(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, g| g == ga + gb)
    }

    /// The "fat dot" inner product: grade |r−s| parts, scalar grades included.
    pub fn inner_product(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, g| g == ga.abs_diff(gb))
    }

    /// Left contraction A ⌋ B.
    pub fn left_contraction(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, g| gb >= ga && g == gb - ga)
    }

    /// Right contraction A ⌊ B.
    pub fn right_contraction(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, g| ga >= gb && g == ga - gb)
    }

    /// (AB − BA)/2.
    pub fn commutator(&self, rhs: &Self) -> Self {
        let two = S::from_i64(2);
        self.geometric_product(rhs)
            .sub(&rhs.geometric_product(self))
            .scalar_div(&two)
            .expect("two is nonzero")
    }

    /// Regressive ("vee") product via the complement dual, defined in every
    /// metric including degenerate ones.
    pub fn regressive(&self, rhs: &Self) -> Self {
        self.dual_complement()
            .outer_product(&rhs.dual_complement())
            .dual_complement_inverse()
    }

    pub fn grade_projection(&self, k: usize) -> Result<Self> {
        if k > self.algebra.n() as usize {
            return Err(GaError::GradeOutOfRange { k, n: self.algebra.n() as usize });
        }
        Ok(self.map(|i, c| {
            if self.algebra.grade_of(i as u32) as usize == k {
                c.clone()
            } else {
                S::zero()
            }
        }))
    }

    fn signed_by_grade(&self, sign: impl Fn(u32) -> bool) -> Self {
        self.map(|i, c| if sign(self.algebra.grade_of(i as u32)) { c.neg() } else { c.clone() })
    }

    /// Reversion: grade k picks up (−1)^{k(k−1)/2}.
    pub fn reverse(&self) -> Self {
        self.signed_by_grade(|k| (k * (k.wrapping_sub(1)) / 2) % 2 == 1)
    }

    /// Main involution: grade k picks up (−1)^k.
    pub fn grade_involution(&self) -> Self {
        self.signed_by_grade(|k| k % 2 == 1)
    }

    /// Geometric conjugate, reverse ∘ grade involution: (−1)^{k(k+1)/2}.
    pub fn conjugate(&self) -> Self {
        self.signed_by_grade(|k| (k * (k + 1) / 2) % 2 == 1)
    }

    /// Dual by pseudoscalar multiplication, A·I. Requires a nondegenerate
    /// metric, otherwise I² = 0 and the map is not invertible.
    pub fn dual_pseudoscalar(&self) -> Result<Self> {
        if self.algebra.signature().is_degenerate() {
            return Err(GaError::DegeneratePseudoscalar);
        }
        Ok(self.geometric_product(&Multivector::pseudoscalar(&self.algebra)))
    }

    /// Complement sign for the blade at `pos`: e_S maps to s·e_{S^c} where
    /// (s·e_{S^c})·e_S = +I under a unit metric.
    fn complement_of(&self, pos: u32) -> (u32, bool) {
        let alg = &self.algebra;
        let full = (alg.dim() - 1) as u32;
        let bits = alg.bits_of(pos).expect("position in range");
        let comp_bits = full ^ bits;
        // reorder sign of e_{S^c}·e_S; factors are disjoint so no metric enters
        let mut a = comp_bits >> 1;
        let mut swaps = 0u32;
        while a != 0 {
            swaps += (a & bits).count_ones();
            a >>= 1;
        }
        (alg.position_of(comp_bits).expect("bits in range"), swaps % 2 == 1)
    }

    /// Metric-free left-complement dual. A signed permutation of the
    /// coefficients; always invertible (see `dual_complement_inverse`).
    pub fn dual_complement(&self) -> Self {
        let mut out = vec![S::zero(); self.dim()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let (target, negate) = self.complement_of(i as u32);
            out[target as usize] = if negate { c.neg() } else { c.clone() };
        }
        Multivector { algebra: self.algebra.clone(), coeffs: out }
    }

    pub fn dual_complement_inverse(&self) -> Self {
        let mut out = vec![S::zero(); self.dim()];
        for i in 0..self.dim() {
            let (target, negate) = self.complement_of(i as u32);
            let c = &self.coeffs[target as usize];
            out[i] = if negate { c.neg() } else { c.clone() };
        }
        Multivector { algebra: self.algebra.clone(), coeffs: out }
    }

    /// ⟨A·reverse(A)⟩₀ — the squared norm when it is nonnegative.
    pub fn norm_squared(&self) -> S {
        let alg = &self.algebra;
        let mut acc = S::zero();
        // only a·a terms reach grade 0, so expand directly instead of
        // forming the full product
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = alg.blade_product(i as u32, i as u32);
            if p.coefficient == 0 {
                continue;
            }
            debug_assert_eq!(p.position, 0);
            let k = alg.grade_of(i as u32);
            let rev_neg = (k * (k.wrapping_sub(1)) / 2) % 2 == 1;
            let term = c.mul(c);
            let positive = (p.coefficient > 0) != rev_neg;
            acc = if positive { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Zero out float coefficients with |c| < tol; exact domains unchanged.
    pub fn clean(&self, tol: f64) -> Self {
        self.map(|_, c| if c.is_zero_tol(tol) { S::zero() } else { c.clone() })
    }

    pub fn abs_coeffs(&self) -> Self {
        self.map(|_, c| c.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_tol(tol))
    }

    pub fn equals(&self, rhs: &Self, tol: f64) -> bool {
        self.signature() == rhs.signature()
            && self.coeffs.iter().zip(&rhs.coeffs).all(|(a, b)| a.sub(b).is_zero_tol(tol))
    }

    /// Single coefficient by 1-based position, matching the user-facing
    /// indexing convention.
    pub fn slice_one(&self, index: usize) -> Result<S> {
        if index < 1 || index > self.dim() {
            return Err(GaError::IndexOutOfRange(index));
        }
        Ok(self.coeffs[index - 1].clone())
    }

    /// Coefficients for an inclusive 1-based range.
    pub fn slice_range(&self, lo: usize, hi: usize) -> Result<Vec<S>> {
        if lo < 1 || hi > self.dim() || lo > hi {
            return Err(GaError::IndexOutOfRange(hi));
        }
        Ok(self.coeffs[lo - 1..hi].to_vec())
    }

    pub fn slice_named(&self, name: &str) -> Result<S> {
        let pos = self.algebra.position_of_name(name)?;
        Ok(self.coeffs[pos as usize].clone())
    }

    /// Embedded sub-multivector keeping only the listed 1-based positions.
    pub fn sub_multivector(&self, positions: &[usize]) -> Result<Self> {
        let mut out = Multivector::zero(&self.algebra);
        for &i in positions {
            if i < 1 || i > self.dim() {
                return Err(GaError::IndexOutOfRange(i));
            }
            out.coeffs[i - 1] = self.coeffs[i - 1].clone();
        }
        Ok(out)
    }

    /// "( c )*e..." rendering; zero coefficients are skipped and the zero
    /// multivector prints as "( 0 )*e0".
    pub fn to_text(&self, style: BasisStyle) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = match style {
                BasisStyle::Plain => self.algebra.basis_name(i as u32),
                BasisStyle::Conformal => self.algebra.conformal_basis_name(i as u32),
            };
            parts.push(format!("( {} )*{}", c, name));
        }
        if parts.is_empty() {
            return "( 0 )*e0".to_string();
        }
        parts.join("+")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sig = self.signature();
        serde_json::json!({
            "signature": [sig.p, sig.q, sig.r],
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl Multivector<f64> {
    /// sqrt⟨A·Ã⟩₀. Mixed signatures can make the square negative, which is
    /// reported rather than silently complexified.
    pub fn norm(&self) -> Result<f64> {
        let sq = self.norm_squared();
        if sq < 0.0 && !sq.is_zero_tol(1e-12) {
            return Err(GaError::IndefiniteNorm);
        }
        Ok(sq.max(0.0).sqrt())
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm()?;
        if n == 0.0 {
            return Err(GaError::ZeroNorm);
        }
        Ok(self.scalar_mul(&(1.0 / n)))
    }
}

impl<S: Scalar> PartialEq for Multivector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.signature() == other.signature() && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> std::fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(BasisStyle::Plain))
    }
}
