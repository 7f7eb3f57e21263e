//! Coefficient domains: GF(2), GF(p), GF(2^m) in a polynomial basis, the
//! integers and the rationals, all behind one tagged element type.
//!
//! Operator impls (`&a + &b` and friends) panic on mixed domains; the
//! `checked_*` methods return [`Error::SpecMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_GFP: u64 = 1 << 32;
const MAX_GF2M_DEGREE: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Gf2,
    Gfp(u64),
    Gf2m { m: u32, modulus: u64 },
    Int,
    Rat,
}

/// A validated coefficient domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DomainSpec(Kind);

impl DomainSpec {
    pub const GF2: DomainSpec = DomainSpec(Kind::Gf2);
    pub const INT: DomainSpec = DomainSpec(Kind::Int);
    pub const RAT: DomainSpec = DomainSpec(Kind::Rat);

    /// Prime field of order `p`, `2 <= p < 2^32`.
    pub fn gfp(p: u64) -> Result<Self> {
        if p >= MAX_GFP {
            return Err(Error::InvalidSpec(format!("modulus {p} too large (limit 2^32)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
        Ok(DomainSpec(Kind::Gfp(p)))
    }

    /// GF(2^m) as GF(2)[x]/(modulus); bit k of `modulus` is the coefficient of x^k.
    pub fn gf2m(m: u32, modulus: u64) -> Result<Self> {
        if m == 0 || m > MAX_GF2M_DEGREE {
            return Err(Error::InvalidSpec(format!("extension degree {m} not in 1..=16")));
        }
        if modulus >> m != 1 {
            return Err(Error::InvalidSpec(format!(
                "modulus {modulus:#x} does not have degree {m}"
            )));
        }
        if !gf2_irreducible(modulus) {
            return Err(Error::InvalidSpec(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(DomainSpec(Kind::Gf2m { m, modulus }))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.0, Kind::Int)
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self.0 {
            Kind::Gf2 => Some(2),
            Kind::Gfp(p) => Some(p),
            Kind::Gf2m { m, .. } => Some(1 << m),
            Kind::Int | Kind::Rat => None,
        }
    }

    /// Parses an element literal in this domain.
    pub fn parse_elem(&self, lit: &str) -> Result<Elem> {
        let t = lit.trim();
        let bad = || Error::BadLiteral { literal: lit.to_string(), spec: self.to_string() };
        let val = match self.0 {
            Kind::Gf2 => match t {
                "0" => Val::Res(0),
                "1" => Val::Res(1),
                _ => return Err(bad()),
            },
            Kind::Gfp(p) => {
                let v: BigInt = t.parse().map_err(|_| bad())?;
                Val::Res(v.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            }
            Kind::Gf2m { m, .. } => {
                let h = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
                let v = u64::from_str_radix(h, 16).map_err(|_| bad())?;
                if v >> m != 0 {
                    return Err(bad());
                }
                Val::Res(v)
            }
            Kind::Int => Val::Int(t.parse().map_err(|_| bad())?),
            Kind::Rat => {
                let r = match t.split_once('/') {
                    Some((a, b)) => {
                        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                        if b.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(a, b)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
                };
                Val::Rat(r)
            }
        };
        Ok(Elem { spec: *self, val })
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Gf2 => write!(f, "gf2"),
            Kind::Gfp(p) => write!(f, "gfp:{p}"),
            Kind::Gf2m { m, modulus } => write!(f, "gf2m:{m}:{modulus:#x}"),
            Kind::Int => write!(f, "int"),
            Kind::Rat => write!(f, "rat"),
        }
    }
}

impl FromStr for DomainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["gf2"] => Ok(DomainSpec::GF2),
            ["int"] => Ok(DomainSpec::INT),
            ["rat"] => Ok(DomainSpec::RAT),
            ["gfp", p] => DomainSpec::gfp(p.parse().map_err(|_| bad())?),
            ["gf2m", m, hex] => {
                let h = hex.strip_prefix("0x").or_else(|| hex.strip_prefix("0X")).unwrap_or(hex);
                let modulus = u64::from_str_radix(h, 16).map_err(|_| bad())?;
                DomainSpec::gf2m(m.parse().map_err(|_| bad())?, modulus)
            }
            _ => Err(bad()),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gf2_degree(a: u64) -> u32 {
    63 - a.leading_zeros()
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = gf2_degree(b);
    while a != 0 && gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

fn gf2_irreducible(f: u64) -> bool {
    let d = gf2_degree(f);
    (1..=d / 2).all(|k| (1u64 << k..1u64 << (k + 1)).all(|g| gf2_rem(f, g) != 0))
}

fn gf2m_mul(mut a: u64, mut b: u64, m: u32, modulus: u64) -> u64 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

/// Rationals are kept in lowest terms with a positive denominator.
#[derive(Clone, Debug)]
enum Val {
    Res(u64),
    Int(BigInt),
    Rat(BigRational),
}

impl PartialEq for Val {
    fn eq(&self, other: &Val) -> bool {
        match (self, other) {
            (Val::Res(a), Val::Res(b)) => a == b,
            (Val::Int(a), Val::Int(b)) => a == b,
            (Val::Rat(a), Val::Rat(b)) => {
                if a.denom() == b.denom() {
                    a.numer() == b.numer()
                } else {
                    a.numer() * b.denom() == b.numer() * a.denom()
                }
            }
            _ => false,
        }
    }
}

impl Eq for Val {}

impl std::hash::Hash for Val {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Val::Res(a) => a.hash(h),
            Val::Int(a) => a.hash(h),
            Val::Rat(a) => reduced(a).hash(h),
        }
    }
}

/// An exact element of some domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    spec: DomainSpec,
    val: Val,
}

impl Elem {
    pub fn zero(spec: DomainSpec) -> Elem {
        Elem::from_i64(spec, 0)
    }

    pub fn one(spec: DomainSpec) -> Elem {
        Elem::from_i64(spec, 1)
    }

    /// Image of an integer under the canonical map from Z.
    pub fn from_i64(spec: DomainSpec, k: i64) -> Elem {
        Elem::from_bigint(spec, &BigInt::from(k))
    }

    pub fn from_bigint(spec: DomainSpec, k: &BigInt) -> Elem {
        let val = match spec.0 {
            Kind::Gf2 | Kind::Gf2m { .. } => Val::Res(k.mod_floor(&BigInt::from(2)).to_u64().unwrap()),
            Kind::Gfp(p) => Val::Res(k.mod_floor(&BigInt::from(p)).to_u64().unwrap()),
            Kind::Int => Val::Int(k.clone()),
            Kind::Rat => Val::Rat(BigRational::from_integer(k.clone())),
        };
        Elem { spec, val }
    }

    /// Rational `num/den`; only valid in `rat`.
    pub fn ratio(num: i64, den: i64) -> Result<Elem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Elem {
            spec: DomainSpec::RAT,
            val: Val::Rat(BigRational::new(num.into(), den.into())),
        })
    }

    /// The `i`-th element of a finite field: a residue for GF(p), a bit
    /// vector for GF(2^m).
    pub fn from_index(spec: DomainSpec, i: u64) -> Result<Elem> {
        match spec.order() {
            Some(q) if i < q => Ok(Elem { spec, val: Val::Res(i) }),
            Some(_) => Err(Error::InvalidArgument(format!("index {i} out of range for {spec}"))),
            None => Err(Error::NotAFiniteField(spec.name())),
        }
    }

    /// Inverse of [`Elem::from_index`].
    pub fn index(&self) -> Option<u64> {
        match self.val {
            Val::Res(r) => Some(r),
            _ => None,
        }
    }

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Res(r) => *r == 0,
            Val::Int(v) => v.is_zero(),
            Val::Rat(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.val {
            Val::Res(r) => *r == 1,
            Val::Int(v) => v.is_one(),
            Val::Rat(v) => v.numer() == v.denom(),
        }
    }

    /// The integer value, for `int` elements.
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.val {
            Val::Int(v) => Some(v),
            _ => None,
        }
    }

    /// `sum a_i b_i`. Over `int` and `rat` this accumulates in place and,
    /// for `rat`, reduces once at the end.
    pub(crate) fn sum_of_products<'a>(spec: DomainSpec, pairs: impl Iterator<Item = (&'a Elem, &'a Elem)>) -> Elem {
        match spec.0 {
            Kind::Int => {
                let mut acc = BigInt::zero();
                for (a, b) in pairs {
                    if let (Val::Int(x), Val::Int(y)) = (&a.val, &b.val) {
                        if !x.is_zero() && !y.is_zero() {
                            acc += x * y;
                        }
                    } else {
                        panic!("domain mismatch");
                    }
                }
                Elem { spec, val: Val::Int(acc) }
            }
            Kind::Rat => {
                let mut num = BigInt::zero();
                let mut den = BigInt::one();
                for (a, b) in pairs {
                    let (Val::Rat(x), Val::Rat(y)) = (&a.val, &b.val) else {
                        panic!("domain mismatch");
                    };
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let pn = x.numer() * y.numer();
                    let pd = if y.denom().is_one() {
                        x.denom().clone()
                    } else if x.denom().is_one() {
                        y.denom().clone()
                    } else {
                        x.denom() * y.denom()
                    };
                    if pd == den {
                        num += pn;
                    } else if den.is_one() {
                        num = num * &pd + pn;
                        den = pd;
                    } else {
                        num = num * &pd + pn * &den;
                        den *= pd;
                    }
                }
                Elem { spec, val: Val::Rat(BigRational::new(num, den)) }
            }
            _ => pairs.fold(Elem::zero(spec), |acc, (a, b)| &acc + &(a * b)),
        }
    }

    fn same(&self, other: &Elem) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.spec.name(), other.spec.name()))
        }
    }

    pub fn checked_add(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        let val = match (&self.val, &other.val) {
            (Val::Res(a), Val::Res(b)) => Val::Res(match self.spec.0 {
                Kind::Gf2 | Kind::Gf2m { .. } => a ^ b,
                Kind::Gfp(p) => (a + b) % p,
                _ => unreachable!(),
            }),
            (Val::Int(a), Val::Int(b)) => Val::Int(a + b),
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(rat_add(a, b)),
            _ => unreachable!(),
        };
        Ok(Elem { spec: self.spec, val })
    }

    pub fn checked_sub(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        let val = match (&self.val, &other.val) {
            (Val::Res(a), Val::Res(b)) => Val::Res(match self.spec.0 {
                Kind::Gf2 => a & b,
                Kind::Gfp(p) => a * b % p,
                Kind::Gf2m { m, modulus } => gf2m_mul(*a, *b, m, modulus),
                _ => unreachable!(),
            }),
            (Val::Int(a), Val::Int(b)) => Val::Int(a * b),
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(rat_mul(a, b)),
            _ => unreachable!(),
        };
        Ok(Elem { spec: self.spec, val })
    }

    pub fn neg(&self) -> Elem {
        let val = match (&self.val, self.spec.0) {
            (Val::Res(a), Kind::Gfp(p)) => Val::Res((p - a) % p),
            (Val::Res(a), _) => Val::Res(*a),
            (Val::Int(a), _) => Val::Int(-a),
            (Val::Rat(a), _) => Val::Rat(-a),
        };
        Elem { spec: self.spec, val }
    }

    pub fn pow(&self, mut k: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = Elem::one(self.spec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, when it exists in the domain.
    pub fn inverse(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        match (&self.val, self.spec.0) {
            (Val::Res(_), Kind::Gf2) => Some(self.clone()),
            (Val::Res(_), Kind::Gfp(p)) => Some(self.pow(p - 2)),
            (Val::Res(_), Kind::Gf2m { m, .. }) => Some(self.pow((1 << m) - 2)),
            (Val::Int(a), _) => (a.abs().is_one()).then(|| self.clone()),
            (Val::Rat(a), _) => Some(Elem { spec: self.spec, val: Val::Rat(a.recip()) }),
            _ => unreachable!(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// The unique `q` with `q * b == self`.
    pub fn exact_div(&self, b: &Elem) -> Result<Elem> {
        self.same(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Val::Int(x), Val::Int(y)) = (&self.val, &b.val) {
            let (q, r) = x.div_rem(y);
            if !r.is_zero() {
                return Err(Error::NotDivisible(self.to_string(), b.to_string()));
            }
            return Ok(Elem { spec: self.spec, val: Val::Int(q) });
        }
        Ok(self * &b.inverse().expect("nonzero field element"))
    }
}

fn reduced(a: &BigRational) -> BigRational {
    BigRational::new(a.numer().clone(), a.denom().clone())
}

fn rat_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::from_integer(a.numer() + b.numer());
    }
    a + b
}

// BigRational's reduction is slow when one side is an integer; skip it.
fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::from_integer(a.numer() * b.numer());
    }
    a * b
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.val, self.spec.0) {
            (Val::Res(r), Kind::Gf2m { .. }) => write!(f, "{r:#x}"),
            (Val::Res(r), _) => write!(f, "{r}"),
            (Val::Int(v), _) => write!(f, "{v}"),
            (Val::Rat(v), _) => {
                let v = reduced(v);
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.checked_add(rhs).expect("domain mismatch")
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.checked_sub(rhs).expect("domain mismatch")
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.checked_mul(rhs).expect("domain mismatch")
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf16() -> DomainSpec {
        DomainSpec::gf2m(4, 0x13).unwrap()
    }

    fn alpha(k: u64) -> Elem {
        Elem::from_index(gf16(), 2).unwrap().pow(k)
    }

    #[test]
    fn gf16_powers() {
        assert_eq!(alpha(5).index(), Some(0x6));
        assert_eq!(&alpha(5) * &alpha(5), alpha(10));
        assert_eq!(alpha(10).index(), Some(0x7));
        assert!(alpha(15).is_one());
        for k in 1..15 {
            assert!(!alpha(k).is_one(), "alpha^{k}");
        }
    }

    #[test]
    fn small_examples() {
        let i = |k| Elem::from_i64(DomainSpec::INT, k);
        assert_eq!(&i(2) * &i(3), i(6));
        let g7 = DomainSpec::gfp(7).unwrap();
        let e = |k| Elem::from_i64(g7, k);
        assert_eq!(&e(5) + &e(4), e(2));
        assert_eq!(e(3).inverse(), Some(e(5)));
        assert_eq!(i(2).inverse(), None);
        assert_eq!(i(-1).inverse(), Some(i(-1)));
        assert_eq!(Elem::zero(DomainSpec::RAT).inverse(), None);
        assert_eq!(i(6).exact_div(&i(2)), Ok(i(3)));
        assert!(matches!(i(1).exact_div(&i(2)), Err(Error::NotDivisible(..))));
        let g5 = DomainSpec::gfp(5).unwrap();
        let f = |k| Elem::from_i64(g5, k);
        assert_eq!(f(3).exact_div(&f(2)), Ok(f(4)));
        assert_eq!(f(3).exact_div(&f(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatch() {
        let a = Elem::one(DomainSpec::INT);
        let b = Elem::one(DomainSpec::RAT);
        assert!(matches!(a.checked_add(&b), Err(Error::SpecMismatch(..))));
    }

    #[test]
    fn spec_validation() {
        assert!(DomainSpec::gfp(9).is_err());
        assert!(DomainSpec::gfp(1).is_err());
        assert!(DomainSpec::gf2m(4, 0x15).is_err()); // (x^2+x+1)^2
        assert!(DomainSpec::gf2m(4, 0x13).is_ok());
        assert!(DomainSpec::gf2m(4, 0x1f).is_ok());
        assert!(DomainSpec::gf2m(3, 0x13).is_err());
        assert!(DomainSpec::gf2m(8, 0x11b).is_ok());
        assert!(DomainSpec::gf2m(16, 0x1100b).is_ok());
    }

    #[test]
    fn literals_round_trip() {
        for (spec, lits) in [
            ("gf2", vec!["0", "1"]),
            ("gfp:7", vec!["0", "6"]),
            ("gf2m:4:0x13", vec!["0x0", "0xf", "0x6"]),
            ("int", vec!["-12", "0", "123456789012345678901234567890"]),
            ("rat", vec!["-3/4", "5", "0"]),
        ] {
            let spec: DomainSpec = spec.parse().unwrap();
            assert_eq!(spec.to_string().parse::<DomainSpec>().unwrap(), spec);
            for l in lits {
                let e = spec.parse_elem(l).unwrap();
                assert_eq!(e.to_string(), l);
            }
        }
        assert!(DomainSpec::GF2.parse_elem("2").is_err());
        assert_eq!(DomainSpec::RAT.parse_elem("4/-6").unwrap().to_string(), "-2/3");
        assert!(DomainSpec::RAT.parse_elem("1/0").is_err());
        assert!(gf16().parse_elem("0x10").is_err());
    }

    fn any_elem(spec: DomainSpec) -> BoxedStrategy<Elem> {
        match spec.order() {
            Some(q) => (0..q).prop_map(move |i| Elem::from_index(spec, i).unwrap()).boxed(),
            None if spec == DomainSpec::INT => {
                (-1000i64..1000).prop_map(move |k| Elem::from_i64(spec, k)).boxed()
            }
            None => (-50i64..50, 1i64..20)
                .prop_map(|(a, b)| Elem::ratio(a, b).unwrap())
                .boxed(),
        }
    }

    fn specs() -> Vec<DomainSpec> {
        vec![
            DomainSpec::GF2,
            DomainSpec::gfp(3).unwrap(),
            DomainSpec::gfp(65521).unwrap(),
            gf16(),
            DomainSpec::gf2m(8, 0x11b).unwrap(),
            DomainSpec::INT,
            DomainSpec::RAT,
        ]
    }

    fn triple() -> impl Strategy<Value = (Elem, Elem, Elem)> {
        proptest::sample::select(specs())
            .prop_flat_map(|s| (any_elem(s), any_elem(s), any_elem(s)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn no_zero_divisors((a, b, _c) in triple()) {
            let p = &a * &b;
            prop_assert_eq!(p.is_zero(), a.is_zero() || b.is_zero());
        }

        #[test]
        fn inverses_and_division((a, b, _c) in triple()) {
            if let Some(inv) = a.inverse() {
                prop_assert!((&a * &inv).is_one());
            } else {
                prop_assert!(a.is_zero() || !a.spec().is_field());
            }
            if !b.is_zero() {
                let p = &a * &b;
                prop_assert_eq!(p.exact_div(&b).unwrap(), a.clone());
            }
        }
    }
}
