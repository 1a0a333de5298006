//! Univariate rational functions in `s` over exact rationals.
//!
//! Canonical form: the denominator is monic and nonzero, and numerator and
//! denominator are coprime, so equality is coefficient-wise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{GaError, Result};
use crate::poly::Poly;
use crate::scalar::{rational_from_text, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Build and reduce to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(GaError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num: Poly::zero(), den: Poly::one() });
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::new(lead.denom().clone(), lead.numer().clone());
        Ok(RationalFunction { num: num.scale(&inv), den: den.monic() })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    /// The indeterminate s.
    pub fn s() -> Self {
        RationalFunction::from_poly(Poly::monomial(num_traits::One::one(), 1))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(GaError::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Clear denominators: the unique scaling of (num, den) in which the
    /// denominator has coprime integer coefficients with positive leading
    /// coefficient. The numerator is scaled by the same factor, so the value
    /// N/D is unchanged.
    pub fn integer_cleared(&self) -> (Poly, Poly) {
        let mut lcm = BigInt::one();
        for c in self.den.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let factor = Rational::from(lcm);
        (self.num.scale(&factor), self.den.scale(&factor))
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            if self.num.degree() == 0 || self.num.is_zero() {
                write!(f, "{}", self.num)
            } else {
                write!(f, "({})", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }
    fn from_i64(v: i64) -> Self {
        RationalFunction::constant(Rational::from_i64(v))
    }
    fn from_decimal_text(text: &str) -> Result<Self> {
        Ok(RationalFunction::constant(rational_from_text(text)?))
    }
    /// Both operands are canonical (num ⊥ den), so after splitting off
    /// g = gcd(den₁, den₂) the only reduction the sum can need is by a
    /// divisor of g; this keeps every gcd on small operands.
    fn add(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den).expect("nonzero denominators");
        let (d2_red, _) = rhs.den.div_rem(&g).expect("gcd divides");
        let num = self.num.mul(&d2_red).add(&rhs.num.mul(
            &self.den.div_rem(&g).expect("gcd divides").0,
        ));
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g2 = num.gcd(&g).expect("nonzero");
        let (num, _) = num.div_rem(&g2).expect("gcd divides");
        let (den_part, _) = self.den.div_rem(&g2).expect("gcd divides g divides den");
        let den = den_part.mul(&d2_red);
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::new(lead.denom().clone(), lead.numer().clone());
        RationalFunction { num: num.scale(&inv), den: den.monic() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Scalar::add(self, &Scalar::neg(rhs))
    }
    /// Cross-cancel gcd(num₁, den₂) and gcd(num₂, den₁) up front; the
    /// remaining factors are pairwise coprime, so no reduction afterwards.
    fn mul(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let num = self.num.div_rem(&g1).expect("gcd divides").0.mul(
            &rhs.num.div_rem(&g2).expect("gcd divides").0,
        );
        let den = self.den.div_rem(&g2).expect("gcd divides").0.mul(
            &rhs.den.div_rem(&g1).expect("gcd divides").0,
        );
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::new(lead.denom().clone(), lead.numer().clone());
        RationalFunction { num: num.scale(&inv), den: den.monic() }
    }
    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(Scalar::mul(self, &rhs.reciprocal()?))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn abs(&self) -> Self {
        // no ordering on rational functions; magnitude fixed up to the sign
        // of the leading numerator coefficient
        match self.num.leading() {
            Some(lead) if lead.is_negative() => Scalar::neg(self),
            _ => self.clone(),
        }
    }
    fn to_i64(&self) -> Option<i64> {
        if !self.is_polynomial() {
            return None;
        }
        if self.num.is_zero() {
            return Some(0);
        }
        if self.num.degree() > 0 {
            return None;
        }
        self.num.coeffs()[0].to_i64()
    }
    fn to_json(&self) -> serde_json::Value {
        let rat = |c: &Rational| {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        };
        serde_json::json!({
            "num": self.num.coeffs().iter().map(rat).collect::<Vec<_>>(),
            "den": self.den.coeffs().iter().map(rat).collect::<Vec<_>>(),
        })
    }
}
