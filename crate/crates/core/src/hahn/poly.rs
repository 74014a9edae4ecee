use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{format_rational, ExtRational, FieldElem, FieldSpec, Rational};

/// A finite-support generalized power series `Σ a_e t^e` with rational exponents.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so the zero series is the empty term list and structural equality
/// is series equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenPoly {
    field: FieldSpec,
    terms: Vec<(Rational, FieldElem)>,
}

impl GenPoly {
    pub fn zero(field: FieldSpec) -> Self {
        GenPoly { field, terms: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        GenPoly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        GenPoly::monomial(c, Rational::zero())
    }

    /// `c · t^e` (the zero series if `c = 0`).
    pub fn monomial(c: FieldElem, e: Rational) -> Self {
        let field = c.field();
        if c.is_zero() {
            GenPoly::zero(field)
        } else {
            GenPoly { field, terms: vec![(e, c)] }
        }
    }

    /// `t^e`.
    pub fn t_pow(field: FieldSpec, e: Rational) -> Self {
        GenPoly::monomial(field.one(), e)
    }

    /// Builds a series from arbitrary `(exponent, coefficient)` pairs, summing
    /// repeated exponents. Fails if a coefficient belongs to another field.
    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, FieldElem)>,
    {
        let mut raw: Vec<(Rational, FieldElem)> = Vec::new();
        for (e, c) in terms {
            if c.field() != field {
                return Err(Error::Domain(format!("coefficient {c} is not in {field}")));
            }
            raw.push((e, c));
        }
        Ok(GenPoly::normalize(field, raw))
    }

    fn normalize(field: FieldSpec, mut raw: Vec<(Rational, FieldElem)>) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Rational, FieldElem)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        GenPoly { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[(Rational, FieldElem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Least exponent of the support, `+∞` for the zero series.
    pub fn degree(&self) -> ExtRational {
        match self.terms.first() {
            Some((e, _)) => ExtRational::Finite(e.clone()),
            None => ExtRational::Infinity,
        }
    }

    /// Largest exponent of the support.
    pub fn top_exponent(&self) -> Option<&Rational> {
        self.terms.last().map(|(e, _)| e)
    }

    /// Exponent and coefficient of the leading (least-exponent) term.
    pub fn leading(&self) -> Result<(&Rational, &FieldElem)> {
        self.terms
            .first()
            .map(|(e, c)| (e, c))
            .ok_or_else(|| Error::Domain("the zero series has no leading term".into()))
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient at exponent 0.
    pub fn const_term(&self) -> FieldElem {
        self.coeff(&Rational::zero())
    }

    pub fn coeff(&self, e: &Rational) -> FieldElem {
        match self.terms.binary_search_by(|(x, _)| x.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    fn check_field(&self, other: &GenPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Domain(format!(
                "series over {} combined with series over {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_field(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_field(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_field(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &GenPoly, negate: bool) -> GenPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let rhs = |c: &FieldElem| if negate { c.neg() } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), rhs(&b[j].1)));
                j += 1;
            } else {
                let c = a[i].1.add(&rhs(&b[j].1));
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        GenPoly { field: self.field, terms: out }
    }

    fn product(&self, other: &GenPoly) -> GenPoly {
        if self.is_zero() || other.is_zero() {
            return GenPoly::zero(self.field);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_monomial(c, e);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_monomial(c, e);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                raw.push((ea + eb, ca.mul(cb)));
            }
        }
        GenPoly::normalize(self.field, raw)
    }

    /// `self · c · t^e`.
    pub fn mul_monomial(&self, c: &FieldElem, e: &Rational) -> GenPoly {
        if c.is_zero() {
            return GenPoly::zero(self.field);
        }
        let terms = self.terms.iter().map(|(x, a)| (x + e, a.mul(c))).collect();
        GenPoly { field: self.field, terms }
    }

    pub fn scale(&self, c: &FieldElem) -> GenPoly {
        self.mul_monomial(c, &Rational::zero())
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: &Rational) -> GenPoly {
        let terms = self.terms.iter().map(|(x, a)| (x + e, a.clone())).collect();
        GenPoly { field: self.field, terms }
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    ///
    /// Long division from the lowest exponent upward. All exponents involved
    /// lie on a common lattice `(1/N)Z`, so the loop is finite.
    pub fn exact_div(&self, divisor: &GenPoly) -> Result<GenPoly> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero series".into()));
        }
        if self.is_zero() {
            return Ok(GenPoly::zero(self.field));
        }
        let (db, cb) = divisor.leading()?;
        let (db, cb_inv) = (db.clone(), cb.inv()?);
        if divisor.is_monomial() {
            return Ok(self.mul_monomial(&cb_inv, &(-db)));
        }
        let bound = self.top_exponent().unwrap() - divisor.top_exponent().unwrap();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((er, cr)) = rem.terms.first() {
            let qe = er - &db;
            if qe > bound {
                return Err(Error::Domain("inexact series division".into()));
            }
            let qc = cr.mul(&cb_inv);
            rem = rem.merge(&divisor.mul_monomial(&qc, &qe), true);
            quotient.push((qe, qc));
        }
        Ok(GenPoly { field: self.field, terms: quotient })
    }
}

impl Add for &GenPoly {
    type Output = GenPoly;
    fn add(self, rhs: &GenPoly) -> GenPoly {
        self.checked_add(rhs).expect("series over different fields")
    }
}

impl Sub for &GenPoly {
    type Output = GenPoly;
    fn sub(self, rhs: &GenPoly) -> GenPoly {
        self.checked_sub(rhs).expect("series over different fields")
    }
}

impl Mul for &GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: &GenPoly) -> GenPoly {
        self.checked_mul(rhs).expect("series over different fields")
    }
}

impl Neg for &GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        GenPoly { field: self.field, terms }
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})t^{}", format_rational(e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn poly(f: FieldSpec, terms: &[(Rational, i64)]) -> GenPoly {
        GenPoly::from_terms(f, terms.iter().map(|(e, c)| (e.clone(), f.from_i64(*c)))).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = FieldSpec::Fp(3);
        let a = poly(f3, &[(int(0), 2), (int(1), 2)]);
        let b = poly(f3, &[(int(0), 1), (int(1), 1)]);
        assert!((&a + &b).is_zero());

        let q = FieldSpec::Q;
        let h = GenPoly::t_pow(q, rat(1, 2));
        assert_eq!(&h * &h, GenPoly::t_pow(q, int(1)));

        let f2 = FieldSpec::Fp(2);
        let s = poly(f2, &[(int(0), 1), (int(1), 1)]);
        assert_eq!(&s * &s, poly(f2, &[(int(0), 1), (int(2), 1)]));
    }

    #[test]
    fn degrees_and_leading_terms() {
        let f3 = FieldSpec::Fp(3);
        let a = poly(f3, &[(int(0), 2), (int(1), 2)]);
        assert_eq!(a.degree(), ExtRational::Finite(int(0)));
        assert_eq!(a.leading().unwrap(), (&int(0), &f3.from_i64(2)));
        assert_eq!(a.const_term(), f3.from_i64(2));
        assert_eq!(GenPoly::zero(f3).degree(), ExtRational::Infinity);
        assert!(GenPoly::zero(f3).leading().is_err());

        let q = FieldSpec::Q;
        let b = poly(q, &[(rat(-3, 2), 1), (int(2), 1)]);
        assert_eq!(b.degree(), ExtRational::Finite(rat(-3, 2)));
        let t = GenPoly::t_pow(q, int(1));
        assert_eq!(t.leading().unwrap(), (&int(1), &q.one()));
        assert!(t.const_term().is_zero());
        let c = poly(q, &[(int(-1), 5), (int(0), 3)]);
        assert_eq!(c.leading().unwrap(), (&int(-1), &q.from_i64(5)));
        assert_eq!(c.const_term(), q.from_i64(3));
    }

    #[test]
    fn field_mismatch_is_a_domain_error() {
        let a = GenPoly::one(FieldSpec::Fp(3));
        let b = GenPoly::one(FieldSpec::Fp(5));
        assert!(matches!(a.checked_add(&b), Err(Error::Domain(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_division() {
        let q = FieldSpec::Q;
        let a = poly(q, &[(int(0), 1), (rat(1, 2), 2), (int(3), -1)]);
        let b = poly(q, &[(rat(-1, 3), 3), (int(1), 1)]);
        let p = &a * &b;
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        let one_plus_t = poly(q, &[(int(0), 1), (int(1), 1)]);
        assert!(GenPoly::one(q).exact_div(&one_plus_t).is_err());
        assert!(a.exact_div(&GenPoly::zero(q)).is_err());
    }
}
