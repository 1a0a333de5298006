//! Dense univariate polynomials over the exact rationals, used as the
//! building block of the rational-function scalar domain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{GaError, Result};
use crate::scalar::Rational;

/// Polynomial in `s` with rational coefficients in ascending powers.
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(num_traits::One::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * s^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = Rational::new(lead.denom().clone(), lead.numer().clone());
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: self = q * rhs + r with deg r < deg rhs.
    pub fn div_rem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        if rhs.is_zero() {
            return Err(GaError::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        let dlen = rhs.coeffs.len();
        if rem.len() < dlen {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead = rhs.coeffs.last().unwrap();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dlen - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &c * b;
                rem[i + j] -= v;
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor via the primitive pseudo-remainder
    /// sequence over the integers: clearing to primitive integer polynomials
    /// and stripping the content after every pseudo-division keeps the
    /// coefficients small, unlike naive Euclid over the rationals.
    pub fn gcd(&self, rhs: &Poly) -> Result<Poly> {
        if self.is_zero() && rhs.is_zero() {
            return Err(GaError::GcdOfZeros);
        }
        if self.is_zero() {
            return Ok(rhs.monic());
        }
        if rhs.is_zero() {
            return Ok(self.monic());
        }
        let mut a = primitive_int(&self.coeffs);
        let mut b = primitive_int(&rhs.coeffs);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                let coeffs = b
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect();
                return Ok(Poly::new(coeffs).monic());
            }
            a = std::mem::replace(&mut b, primitive_int_raw(r));
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Rational coefficients to a primitive integer coefficient vector with
/// positive leading coefficient (the gcd only needs the poly up to units).
fn primitive_int(coeffs: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_int_raw(ints)
}

/// Divide integer coefficients by their content; flip so the leading
/// coefficient is positive.
fn primitive_int_raw(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return coeffs;
    }
    let mut content = BigInt::from(0);
    for c in &coeffs {
        content = content.gcd(c);
    }
    if coeffs.last().expect("nonempty").is_negative() {
        content = -content;
    }
    for c in coeffs.iter_mut() {
        *c = &*c / &content;
    }
    coeffs
}

/// Pseudo-remainder of a by b over the integers: repeatedly scale by b's
/// leading coefficient so every cancellation step stays integral.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lead * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

impl std::fmt::Display for Poly {
    /// Ascending powers: "15052095 + 2552384*s + 16*s^4"; zero prints "0".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = num_traits::Signed::abs(c);
            if first {
                if num_traits::Signed::is_negative(c) {
                    write!(f, "-")?;
                }
                first = false;
            } else if num_traits::Signed::is_negative(c) {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = num_traits::One::is_one(&mag);
            match (k, unit_coeff) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{}*s", mag)?,
                (_, true) => write!(f, "s^{}", k)?,
                (_, false) => write!(f, "{}*s^{}", mag, k)?,
            }
        }
        Ok(())
    }
}
