//! Dense univariate polynomials with coefficients stored low-to-high.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }
}

impl Add<i64> for Degree {
    type Output = Degree;
    fn add(self, k: i64) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d + k),
        }
    }
}

impl Sub<i64> for Degree {
    type Output = Degree;
    fn sub(self, k: i64) -> Degree {
        self + (-k)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, other: Degree) -> Degree {
        match other {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(k) => self + k,
        }
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Degree {
        Degree::Finite(d)
    }
}

impl PartialEq<i64> for Degree {
    fn eq(&self, other: &i64) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<i64> for Degree {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in canonical form (no trailing zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: DomainSpec,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(spec: DomainSpec) -> Poly {
        Poly { spec, coeffs: Vec::new() }
    }

    pub fn one(spec: DomainSpec) -> Poly {
        Poly::constant(Elem::one(spec))
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::monomial(c, 0)
    }

    /// `c * x^k`.
    pub fn monomial(c: Elem, k: usize) -> Poly {
        let spec = c.spec();
        if c.is_zero() {
            return Poly::zero(spec);
        }
        let mut coeffs = vec![Elem::zero(spec); k];
        coeffs.push(c);
        Poly { spec, coeffs }
    }

    pub fn x(spec: DomainSpec) -> Poly {
        Poly::monomial(Elem::one(spec), 1)
    }

    pub fn from_coeffs(spec: DomainSpec, coeffs: Vec<Elem>) -> Result<Poly> {
        if let Some(c) = coeffs.iter().find(|c| c.spec() != spec) {
            return Err(Error::SpecMismatch(spec.to_string(), c.spec().to_string()));
        }
        let mut p = Poly { spec, coeffs };
        p.trim();
        Ok(p)
    }

    /// Integer coefficients mapped into `spec`, low-to-high.
    pub fn from_i64s(spec: DomainSpec, cs: &[i64]) -> Poly {
        let mut p = Poly { spec, coeffs: cs.iter().map(|&c| Elem::from_i64(spec, c)).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Elem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Number of stored coefficients, `|f| + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            l => Degree::Finite(l as i64 - 1),
        }
    }

    /// Degree as a usize; panics on the zero polynomial.
    pub fn deg(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`; zero outside the stored range.
    pub fn coeff(&self, i: i64) -> Elem {
        if i < 0 {
            return Elem::zero(self.spec);
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| Elem::zero(self.spec))
    }

    fn same(&self, other: &Poly) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.spec.to_string(), other.spec.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        let n = self.len().max(other.len());
        let coeffs = (0..n as i64).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        let mut p = Poly { spec: self.spec, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.spec));
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..a.len() + b.len() - 1)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                Elem::sum_of_products(self.spec, (lo..=hi).map(|i| (&a[i], &b[k - i])))
            })
            .collect();
        let mut p = Poly { spec: self.spec, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn neg(&self) -> Poly {
        Poly { spec: self.spec, coeffs: self.coeffs.iter().map(Elem::neg).collect() }
    }

    /// `c * self`.
    pub fn scale(&self, c: &Elem) -> Poly {
        assert_eq!(c.spec(), self.spec, "domain mismatch");
        if c.is_zero() {
            return Poly::zero(self.spec);
        }
        Poly { spec: self.spec, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::zero(self.spec); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { spec: self.spec, coeffs }
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, a: &Elem) -> Result<Elem> {
        if a.spec() != self.spec {
            return Err(Error::SpecMismatch(self.spec.to_string(), a.spec().to_string()));
        }
        Ok(self.coeffs.iter().rev().fold(Elem::zero(self.spec), |acc, c| &(&acc * a) + c))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lc = self.lead().ok_or(Error::ZeroPolynomial)?;
        let inv = lc.inverse().ok_or_else(|| Error::NotInvertible(lc.to_string()))?;
        Ok(self.scale(&inv))
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same(d)?;
        let lc = d.lead().ok_or(Error::DivisionByZero)?;
        let inv = lc.inverse().ok_or_else(|| Error::NotInvertible(lc.to_string()))?;
        let mut r = self.clone();
        let mut q = vec![Elem::zero(self.spec); self.len().saturating_sub(d.len()) + 1];
        while !r.is_zero() && r.len() >= d.len() {
            let k = r.len() - d.len();
            let c = r.lead().unwrap() * &inv;
            r = &r - &d.shift(k).scale(&c);
            q[k] = c;
        }
        let mut q = Poly { spec: self.spec, coeffs: q };
        q.trim();
        Ok((q, r))
    }

    /// Monic greatest common divisor (fields only).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        if !self.spec.is_field() {
            return Err(Error::NotAField(self.spec.to_string()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        a.monic()
    }

    /// Human-readable form, highest degree first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c.is_one(), i) {
                (true, 0) => "1".into(),
                (true, _) => mono,
                (false, 0) => c.to_string(),
                (false, _) => format!("{c}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("domain mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("domain mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("domain mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
