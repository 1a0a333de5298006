//! The matrix-representation isomorphism and everything built on it:
//! multivector inverse, integer powers and analytic functions.
//!
//! A multivector A of an algebra of dimension d acts on coefficient arrays
//! by left multiplication; the d×d matrix of that action (column i = the
//! coefficients of A·E_i) is a faithful representation, so f(A) is computed
//! as the matrix function f(M_A) read back from the first column.

use std::sync::Arc;

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse, Solve};
use num_complex::Complex64;

use crate::algebra::Algebra;
use crate::error::{GaError, Result};
use crate::linalg::{self, DenseMatrix};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Column i holds the coefficients of A·E_i.
pub fn to_matrix<S: Scalar>(a: &Multivector<S>) -> DenseMatrix<S> {
    let alg = a.algebra();
    let d = a.dim();
    let mut m = DenseMatrix::<S>::zeros(d, d);
    for col in 0..d {
        for (row, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = alg.blade_product(row as u32, col as u32);
            if p.coefficient == 0 {
                continue;
            }
            let slot = m.at(p.position as usize, col);
            let v = if p.coefficient > 0 { slot.add(c) } else { slot.sub(c) };
            m.set(p.position as usize, col, v);
        }
    }
    m
}

/// Retraction: column 0 of M_A is coeff_array(A·1) = coeff_array(A).
pub fn from_first_column<S: Scalar>(
    algebra: &Arc<Algebra>,
    m: &DenseMatrix<S>,
) -> Result<Multivector<S>> {
    if m.rows != algebra.dim() {
        return Err(GaError::DimensionMismatch { got: m.rows, want: algebra.dim() });
    }
    let coeffs = (0..m.rows).map(|r| m.at(r, 0).clone()).collect();
    Multivector::from_coeffs(algebra, coeffs)
}

/// X with A·X = X·A = 1, by solving M_A·x = coeff_array(1). Exact in the
/// rational domains; partial pivoting in float.
pub fn inverse<S: Scalar>(a: &Multivector<S>) -> Result<Multivector<S>> {
    let m = to_matrix(a);
    let mut rhs = DenseMatrix::zeros(a.dim(), 1);
    rhs.set(0, 0, S::one());
    let x = linalg::solve(&m, &rhs)?;
    Multivector::from_coeffs(a.algebra(), x.data)
}

/// A^k by repeated squaring; negative k through the inverse.
pub fn int_power<S: Scalar>(a: &Multivector<S>, k: i64) -> Result<Multivector<S>> {
    if k < 0 {
        return int_power(&inverse(a)?, -k);
    }
    let mut acc = Multivector::one(a.algebra());
    let mut base = a.clone();
    let mut k = k as u64;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.geometric_product(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.geometric_product(&base);
        }
    }
    Ok(acc)
}

/// R·X·reverse(R).
pub fn sandwich<S: Scalar>(r: &Multivector<S>, x: &Multivector<S>) -> Multivector<S> {
    r.geometric_product(x).geometric_product(&r.reverse())
}

/// An analytic function to apply through the matrix representation: either
/// one of the named elementary functions or a user hook evaluated on the
/// (complex) spectrum.
#[derive(Clone)]
pub enum AnalyticFn {
    Named(&'static str),
    Custom(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl std::fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnalyticFn::Named(n) => write!(f, "AnalyticFn::Named({n})"),
            AnalyticFn::Custom(_) => write!(f, "AnalyticFn::Custom"),
        }
    }
}

const NAMED_FUNCTIONS: &[&str] = &[
    "exp", "log", "sqrt", "sin", "cos", "tan", "cot", "sec", "csc", "sinh", "cosh", "tanh",
    "coth", "sech", "csch", "asin", "acos", "atan", "acot", "asec", "acsc", "asinh", "acosh",
    "atanh", "acoth", "asech", "acsch",
];

impl AnalyticFn {
    pub fn from_name(name: &str) -> Option<AnalyticFn> {
        NAMED_FUNCTIONS.iter().find(|&&n| n == name).map(|&n| AnalyticFn::Named(n))
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnalyticFn::Named(n) => n,
            AnalyticFn::Custom(_) => "custom",
        }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let inv = |w: Complex64| 1.0 / w;
        match self {
            AnalyticFn::Custom(f) => f(z),
            AnalyticFn::Named(n) => match *n {
                "exp" => z.exp(),
                "log" => z.ln(),
                "sqrt" => z.sqrt(),
                "sin" => z.sin(),
                "cos" => z.cos(),
                "tan" => z.tan(),
                "cot" => inv(z.tan()),
                "sec" => inv(z.cos()),
                "csc" => inv(z.sin()),
                "sinh" => z.sinh(),
                "cosh" => z.cosh(),
                "tanh" => z.tanh(),
                "coth" => inv(z.tanh()),
                "sech" => inv(z.cosh()),
                "csch" => inv(z.sinh()),
                "asin" => z.asin(),
                "acos" => z.acos(),
                "atan" => z.atan(),
                "acot" => inv(z).atan(),
                "asec" => inv(z).acos(),
                "acsc" => inv(z).asin(),
                "asinh" => z.asinh(),
                "acosh" => z.acosh(),
                "atanh" => z.atanh(),
                "acoth" => inv(z).atanh(),
                "asech" => inv(z).acosh(),
                "acsch" => inv(z).asinh(),
                other => unreachable!("unknown named function {other}"),
            },
        }
    }

    /// Reject eigenvalues sitting on the principal branch cut.
    fn branch_check(&self, z: Complex64) -> Result<()> {
        const TOL: f64 = 1e-12;
        let on_real = z.im.abs() <= TOL;
        let on_imag = z.re.abs() <= TOL;
        let violation = match self {
            AnalyticFn::Custom(_) => false,
            AnalyticFn::Named(n) => match *n {
                // closed negative real axis
                "log" | "sqrt" => on_real && z.re <= TOL && z.norm() <= TOL
                    || on_real && z.re < -TOL,
                // real axis outside [-1, 1]
                "asin" | "acos" | "atanh" => on_real && z.re.abs() > 1.0 + TOL,
                // imaginary axis outside [-i, i]
                "atan" | "acoth" => on_imag && z.im.abs() > 1.0 + TOL,
                // real axis below 1
                "acosh" => on_real && z.re < 1.0 - TOL,
                _ => false,
            },
        };
        if violation {
            return Err(GaError::BranchViolation { func: self.name(), value: format!("{z}") });
        }
        let w = self.eval(z);
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(GaError::BranchViolation { func: self.name(), value: format!("{z}") });
        }
        Ok(())
    }
}

fn to_array(m: &DenseMatrix<f64>) -> Array2<f64> {
    Array2::from_shape_vec((m.rows, m.cols), m.data.clone()).expect("shape matches data")
}

/// Matrix exponential by scaling and squaring with a [6/6] Padé approximant.
fn expm(a: &Array2<f64>) -> Array2<f64> {
    let n = a.nrows();
    // scale so the 1-norm of the argument is below 1/2
    let norm = (0..n)
        .map(|j| (0..n).map(|i| a[[i, j]].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = a.mapv(|v| v / f64::powi(2.0, s));

    // Padé [m/m] coefficients c_k = (2m-k)! m! / ((2m)! k! (m-k)!)
    const M: usize = 6;
    let mut c = [0.0f64; M + 1];
    c[0] = 1.0;
    for k in 1..=M {
        c[k] = c[k - 1] * (M - k + 1) as f64 / ((2 * M - k + 1) as f64 * k as f64);
    }
    let mut num = Array2::<f64>::eye(n) * c[0];
    let mut den = Array2::<f64>::eye(n) * c[0];
    let mut power = Array2::<f64>::eye(n);
    for (k, &ck) in c.iter().enumerate().skip(1) {
        power = power.dot(&a);
        num = num + &power * ck;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den = den + &power * (ck * sign);
    }
    // solve den * X = num column by column
    let mut x = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let col = den.solve(&num.column(j).to_owned()).expect("Padé denominator nonsingular");
        x.column_mut(j).assign(&col);
    }
    let mut x = x;
    for _ in 0..s {
        x = x.dot(&x);
    }
    x
}

const DEFECTIVE_COND: f64 = 1e10;
const IMAG_TOL: f64 = 1e-8;

/// f(A) through the matrix representation. `exp` goes through scaling and
/// squaring; every other function through a complex eigendecomposition with
/// principal branches.
pub fn analytic_function(a: &Multivector<f64>, f: &AnalyticFn) -> Result<Multivector<f64>> {
    let m = to_array(&to_matrix(a));
    if matches!(f, AnalyticFn::Named("exp")) {
        let e = expm(&m);
        let coeffs = e.column(0).to_vec();
        return Multivector::from_coeffs(a.algebra(), coeffs);
    }

    let (vals, vecs): (Array1<Complex64>, Array2<Complex64>) =
        m.eig().map_err(|_| GaError::DefectiveRepresentation(f64::INFINITY))?;

    // defectiveness proxy: Frobenius condition of the eigenvector matrix
    let vinv = vecs.inv().map_err(|_| GaError::DefectiveRepresentation(f64::INFINITY))?;
    let fro = |m: &Array2<Complex64>| m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cond = fro(&vecs) * fro(&vinv);
    if !cond.is_finite() || cond > DEFECTIVE_COND {
        return Err(GaError::DefectiveRepresentation(cond));
    }

    for &z in vals.iter() {
        f.branch_check(z)?;
    }

    // f(M) e_0 = V f(Λ) V^{-1} e_0; only the first column is needed
    let mut e0 = Array1::<Complex64>::zeros(m.nrows());
    e0[0] = Complex64::new(1.0, 0.0);
    let w = vecs.solve(&e0).map_err(|_| GaError::DefectiveRepresentation(cond))?;
    let scaled: Array1<Complex64> =
        Array1::from_iter(vals.iter().zip(w.iter()).map(|(z, wi)| f.eval(*z) * wi));
    let col = vecs.dot(&scaled);

    let worst_imag = col.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
    if worst_imag > IMAG_TOL {
        return Err(GaError::NonRealResult(worst_imag));
    }
    Multivector::from_coeffs(a.algebra(), col.iter().map(|z| z.re).collect())
}

/// exp(−θ/2·B) for a bivector B. When B² is a scalar σ the closed forms are
/// used (circular for σ<0, hyperbolic for σ>0, affine for σ=0, the
/// translator case); otherwise falls back to the matrix exponential.
pub fn rotor_exp_bivector(theta: f64, b: &Multivector<f64>) -> Result<Multivector<f64>> {
    let h = b.scalar_mul(&(-theta / 2.0));
    let h2 = h.geometric_product(&h);
    let sigma = *h2.scalar_part();
    let rest = h2.sub(&Multivector::scalar(h.algebra(), sigma));
    if !rest.is_zero_tol(1e-12) {
        return analytic_function(&h, &AnalyticFn::Named("exp"));
    }
    let one = Multivector::one(h.algebra());
    // exp(H) with H² = σ: cos/cosh series in c = √|σ|
    let c = sigma.abs().sqrt();
    let (a0, a1) = if sigma < 0.0 {
        (c.cos(), if c > 1e-300 { c.sin() / c } else { 1.0 })
    } else if sigma > 0.0 {
        (c.cosh(), if c > 1e-300 { c.sinh() / c } else { 1.0 })
    } else {
        (1.0, 1.0)
    };
    Ok(one.scalar_mul(&a0).add(&h.scalar_mul(&a1)))
}

/// Scalar-domain hooks for operations that only exist over the floats.
/// Exact domains inherit the defaults, which report the restriction instead
/// of silently approximating.
pub trait AnalyticOps: Scalar {
    fn sqrt_scalar(&self) -> Result<Self> {
        Err(GaError::FloatDomainRequired { func: "sqrt".into() })
    }

    fn mv_analytic(_a: &Multivector<Self>, f: &AnalyticFn) -> Result<Multivector<Self>> {
        Err(GaError::FloatDomainRequired { func: f.name().into() })
    }

    fn mv_norm(_a: &Multivector<Self>) -> Result<Self> {
        Err(GaError::FloatDomainRequired { func: "norm".into() })
    }

    fn mv_normalize(_a: &Multivector<Self>) -> Result<Multivector<Self>> {
        Err(GaError::FloatDomainRequired { func: "normalize".into() })
    }
}

impl AnalyticOps for crate::scalar::Rational {}
impl AnalyticOps for crate::ratfun::RationalFunction {}

impl AnalyticOps for f64 {
    fn sqrt_scalar(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(GaError::BranchViolation { func: "sqrt", value: format!("{self}") });
        }
        Ok(self.sqrt())
    }

    fn mv_analytic(a: &Multivector<f64>, f: &AnalyticFn) -> Result<Multivector<f64>> {
        analytic_function(a, f)
    }

    fn mv_norm(a: &Multivector<f64>) -> Result<f64> {
        a.norm()
    }

    fn mv_normalize(a: &Multivector<f64>) -> Result<Multivector<f64>> {
        a.normalize()
    }
}
