//! Exact scalars: rational exponents and the small coefficient fields.
//!
//! Exponents and tropical entries are [`Rational`]s (arbitrary precision).
//! Coefficients live in one of three fields described by a [`FieldSpec`]:
//! the rationals, a prime field `F_p`, or `GF(4) = F_2[x]/(x^2 + x + 1)`.
//! Every finite field carries a canonical ordering of its units so that each
//! "pick an element" step in the constructions is reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended by `+∞`, ordered with `+∞` on top.
///
/// Used both for series degrees (the zero series has degree `+∞`) and for
/// the padded vectors of the tropical dependence machinery.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    /// Saturating sum: `+∞ + x = +∞`.
    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }

    pub fn add_rational(&self, other: &Rational) -> ExtRational {
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a + other),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    pub fn min(self, other: ExtRational) -> ExtRational {
        std::cmp::min(self, other)
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => f.write_str(&format_rational(r)),
            ExtRational::Infinity => f.write_str("inf"),
        }
    }
}

/// Which coefficient field a series or element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Q,
    Fp(u32),
    Gf4,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`; fails unless `p` is prime and below 2^16 (keeps products in `u32`).
    pub fn prime(p: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if p >= 1 << 16 {
            return Err(Error::Unsupported(format!("prime {p} too large")));
        }
        Ok(FieldSpec::Fp(p))
    }

    /// Number of elements, `None` for the rationals.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            FieldSpec::Q => None,
            FieldSpec::Fp(p) => Some(*p as u64),
            FieldSpec::Gf4 => Some(4),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// True when the field has at least `k` elements.
    pub fn has_at_least(&self, k: u64) -> bool {
        self.cardinality().map_or(true, |c| c >= k)
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldSpec::Q => FieldElem::Q(Rational::zero()),
            FieldSpec::Fp(p) => FieldElem::Fp { p: *p, v: 0 },
            FieldSpec::Gf4 => FieldElem::Gf4(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    /// Image of an integer under the canonical ring map `Z -> F`.
    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            FieldSpec::Q => FieldElem::Q(int(n)),
            FieldSpec::Fp(p) => FieldElem::Fp { p: *p, v: n.rem_euclid(*p as i64) as u32 },
            FieldSpec::Gf4 => FieldElem::Gf4((n.rem_euclid(2)) as u8),
        }
    }

    /// Parses an element: integers for `F_p`, `0|1|x|x+1` for GF(4), rationals for Q.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        match self {
            FieldSpec::Q => Ok(FieldElem::Q(parse_rational(s)?)),
            FieldSpec::Fp(_) => {
                let n = BigInt::from_str(s)
                    .map_err(|_| Error::Parse(format!("invalid element {s:?} of {self}")))?;
                let p = BigInt::from(self.cardinality().unwrap_or(1));
                let r = ((n % &p) + &p) % &p;
                Ok(self.from_i64(r.to_i64().unwrap_or(0)))
            }
            FieldSpec::Gf4 => match s.replace(' ', "").as_str() {
                "0" => Ok(FieldElem::Gf4(0)),
                "1" => Ok(FieldElem::Gf4(1)),
                "x" => Ok(FieldElem::Gf4(2)),
                "x+1" | "1+x" => Ok(FieldElem::Gf4(3)),
                _ => Err(Error::Parse(format!("invalid GF4 element {s:?}"))),
            },
        }
    }

    /// All nonzero elements in canonical order (`1, 2, ..., p-1` and `1, x, x+1`).
    pub fn units(&self) -> Result<Vec<FieldElem>> {
        match self {
            FieldSpec::Q => Err(Error::Unsupported("the unit group of Q is infinite".into())),
            FieldSpec::Fp(p) => Ok((1..*p).map(|v| FieldElem::Fp { p: *p, v }).collect()),
            FieldSpec::Gf4 => Ok((1..4u8).map(FieldElem::Gf4).collect()),
        }
    }

    /// Canonical unit order extended to Q as `1, 2, 3, ...`; finite for finite fields.
    pub fn unit_candidates(&self) -> Box<dyn Iterator<Item = FieldElem> + '_> {
        match self {
            FieldSpec::Q => Box::new((1..).map(|n| FieldElem::Q(int(n)))),
            _ => Box::new(self.units().unwrap_or_default().into_iter()),
        }
    }

    /// First unit (canonical order) not in `forbidden`.
    ///
    /// Fails with a capacity error when every unit is forbidden, which is the
    /// situation for `F_2` and `F_3` in the lift constructions.
    pub fn pick_excluding(&self, forbidden: &[FieldElem]) -> Result<FieldElem> {
        let limit = forbidden.len() + 1;
        self.unit_candidates()
            .take(match self {
                FieldSpec::Q => limit,
                _ => usize::MAX,
            })
            .find(|u| !forbidden.contains(u))
            .ok_or_else(|| Error::Capacity {
                field: self.to_string(),
                reason: format!("every unit lies in the forbidden set of size {}", forbidden.len()),
            })
    }

    /// The first `k` distinct units outside `forbidden`.
    pub fn pick_distinct_excluding(&self, forbidden: &[FieldElem], k: usize) -> Result<Vec<FieldElem>> {
        let mut taken: Vec<FieldElem> = forbidden.to_vec();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let u = self.pick_excluding(&taken)?;
            taken.push(u.clone());
            out.push(u);
        }
        Ok(out)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => f.write_str("Q"),
            FieldSpec::Fp(p) => write!(f, "F{p}"),
            FieldSpec::Gf4 => f.write_str("GF4"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        match s {
            "Q" => Ok(FieldSpec::Q),
            "GF4" => Ok(FieldSpec::Gf4),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
                FieldSpec::prime(p).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }
}

/// An element of one of the supported fields, always in canonical form.
///
/// GF(4) elements are stored as two bits `b0 + b1·x`, so `1 = 1`, `x = 2`
/// and `x + 1 = 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp { p: u32, v: u32 },
    Gf4(u8),
    Q(Rational),
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    let (a0, a1) = (a & 1, (a >> 1) & 1);
    let (b0, b1) = (b & 1, (b >> 1) & 1);
    let c0 = (a0 & b0) ^ (a1 & b1);
    let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
    c0 | (c1 << 1)
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Fp { p, .. } => FieldSpec::Fp(*p),
            FieldElem::Gf4(_) => FieldSpec::Gf4,
            FieldElem::Q(_) => FieldSpec::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 0,
            FieldElem::Gf4(v) => *v == 0,
            FieldElem::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 1,
            FieldElem::Gf4(v) => *v == 1,
            FieldElem::Q(r) => r.is_one(),
        }
    }

    fn mismatch(&self, other: &FieldElem) -> ! {
        panic!("field mismatch: {} vs {}", self.field(), other.field())
    }

    /// Sum. Panics when the operands come from different fields; the series
    /// layer checks fields before reaching here.
    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { p, v }, FieldElem::Fp { p: q, v: w }) if p == q => {
                FieldElem::Fp { p: *p, v: (v + w) % p }
            }
            (FieldElem::Gf4(a), FieldElem::Gf4(b)) => FieldElem::Gf4(a ^ b),
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Fp { p, v } => FieldElem::Fp { p: *p, v: (p - v) % p },
            FieldElem::Gf4(a) => FieldElem::Gf4(*a),
            FieldElem::Q(a) => FieldElem::Q(-a),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { p, v }, FieldElem::Fp { p: q, v: w }) if p == q => {
                FieldElem::Fp { p: *p, v: v * w % p }
            }
            (FieldElem::Gf4(a), FieldElem::Gf4(b)) => FieldElem::Gf4(gf4_mul(*a, *b)),
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            _ => self.mismatch(other),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Domain(format!("inverse of zero in {}", self.field())));
        }
        Ok(match self {
            FieldElem::Fp { p, v } => {
                // Fermat: v^(p-2)
                let (mut base, mut exp, mut acc) = (*v as u64, (*p - 2) as u64, 1u64);
                let m = *p as u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                FieldElem::Fp { p: *p, v: acc as u32 }
            }
            // units 1, x, x+1: x·(x+1) = x² + x = 1
            FieldElem::Gf4(a) => FieldElem::Gf4(match a {
                1 => 1,
                2 => 3,
                _ => 2,
            }),
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inv()?))
    }

    /// `(-1)^k` style helper used for permutation signs.
    pub fn signed(&self, negative: bool) -> FieldElem {
        if negative {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
            FieldElem::Gf4(a) => f.write_str(match a {
                0 => "0",
                1 => "1",
                2 => "x",
                _ => "x+1",
            }),
            FieldElem::Q(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// True if `r` is a nonnegative integer small enough for `usize`.
pub fn as_small_nonneg(r: &Rational) -> Option<usize> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_usize()
    } else {
        None
    }
}
