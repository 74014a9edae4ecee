use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hahn::GenPoly;
use crate::scalars::{ExtRational, FieldElem, FieldSpec, Rational};

/// A ratio of generalized polynomials.
///
/// Canonical form: the denominator has degree 0 and leading coefficient 1
/// (the common monomial factor is pushed into the numerator), and the zero
/// fraction is `0 / 1`. Common non-monomial factors are not cancelled, so
/// equality is decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct GenFrac {
    num: GenPoly,
    den: GenPoly,
}

impl GenFrac {
    pub fn new(num: GenPoly, den: GenPoly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::Domain("numerator and denominator over different fields".into()));
        }
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(GenFrac::canonical(num, den))
    }

    fn canonical(num: GenPoly, den: GenPoly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return GenFrac { num, den: GenPoly::one(field) };
        }
        let (e, c) = den.leading().expect("nonzero denominator");
        if e.is_zero() && c.is_one() {
            return GenFrac { num, den };
        }
        let (shift, scale) = (-e.clone(), c.inv().expect("unit leading coefficient"));
        GenFrac { num: num.mul_monomial(&scale, &shift), den: den.mul_monomial(&scale, &shift) }
    }

    pub fn from_poly(p: GenPoly) -> Self {
        let den = GenPoly::one(p.field());
        GenFrac { num: p, den }
    }

    pub fn zero(field: FieldSpec) -> Self {
        GenFrac::from_poly(GenPoly::zero(field))
    }

    pub fn one(field: FieldSpec) -> Self {
        GenFrac::from_poly(GenPoly::one(field))
    }

    pub fn monomial(c: FieldElem, e: Rational) -> Self {
        GenFrac::from_poly(GenPoly::monomial(c, e))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn num(&self) -> &GenPoly {
        &self.num
    }

    pub fn den(&self) -> &GenPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the denominator is 1.
    pub fn is_poly(&self) -> bool {
        self.den.is_monomial()
    }

    /// `deg num − deg den`; since the denominator is normalised to degree 0
    /// this is the numerator's degree.
    pub fn degree(&self) -> ExtRational {
        self.num.degree()
    }

    /// Leading coefficient of the ratio (the denominator's is 1).
    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.num.leading_coeff()
    }

    pub fn checked_add(&self, other: &GenFrac) -> Result<GenFrac> {
        if self.den == other.den {
            return Ok(GenFrac::canonical(self.num.checked_add(&other.num)?, self.den.clone()));
        }
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Ok(GenFrac::canonical(num, self.den.checked_mul(&other.den)?))
    }

    pub fn checked_sub(&self, other: &GenFrac) -> Result<GenFrac> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &GenFrac) -> Result<GenFrac> {
        let num = self.num.checked_mul(&other.num)?;
        let den = if other.is_poly() {
            self.den.clone()
        } else if self.is_poly() {
            other.den.clone()
        } else {
            self.den.checked_mul(&other.den)?
        };
        Ok(GenFrac::canonical(num, den))
    }

    pub fn neg(&self) -> GenFrac {
        GenFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<GenFrac> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of the zero series".into()));
        }
        Ok(GenFrac::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &GenFrac) -> Result<GenFrac> {
        self.checked_mul(&other.inv()?)
    }

    pub fn mul_monomial(&self, c: &FieldElem, e: &Rational) -> GenFrac {
        GenFrac::canonical(self.num.mul_monomial(c, e), self.den.clone())
    }

    pub fn mul_poly(&self, p: &GenPoly) -> Result<GenFrac> {
        Ok(GenFrac::canonical(self.num.checked_mul(p)?, self.den.clone()))
    }

    /// The fraction as a series, when the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<GenPoly> {
        self.num.exact_div(&self.den).ok()
    }
}

impl PartialEq for GenFrac {
    fn eq(&self, other: &GenFrac) -> bool {
        if self.field() != other.field() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<GenPoly> for GenFrac {
    fn from(p: GenPoly) -> Self {
        GenFrac::from_poly(p)
    }
}

impl fmt::Display for GenFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn degree_of_ratio() {
        let q = FieldSpec::Q;
        let a = GenFrac::new(GenPoly::t_pow(q, int(2)), GenPoly::t_pow(q, int(1))).unwrap();
        assert_eq!(a.degree(), ExtRational::Finite(int(1)));
        assert!(a.is_poly());
    }

    #[test]
    fn inverse_times_self_is_one() {
        let q = FieldSpec::Q;
        let t = GenFrac::monomial(q.one(), int(1));
        let inv = t.inv().unwrap();
        assert_eq!(inv.checked_mul(&t).unwrap(), GenFrac::one(q));
        assert!(GenFrac::zero(q).inv().is_err());
    }

    #[test]
    fn canonical_denominator() {
        let f5 = FieldSpec::Fp(5);
        let den = GenPoly::from_terms(f5, [(int(2), f5.from_i64(3)), (int(3), f5.one())]).unwrap();
        let x = GenFrac::new(GenPoly::one(f5), den).unwrap();
        assert_eq!(x.den().degree(), ExtRational::Finite(int(0)));
        assert!(x.den().leading_coeff().unwrap().is_one());
        assert_eq!(x.degree(), ExtRational::Finite(int(-2)));
    }

    #[test]
    fn cross_multiplied_equality() {
        let q = FieldSpec::Q;
        let one_plus_t = GenPoly::from_terms(q, [(int(0), q.one()), (int(1), q.one())]).unwrap();
        let a = GenFrac::new(&one_plus_t * &one_plus_t, one_plus_t.clone()).unwrap();
        assert_eq!(a, GenFrac::from_poly(one_plus_t));
        assert!(GenFrac::new(GenPoly::one(q), GenPoly::zero(q)).is_err());
    }
}
