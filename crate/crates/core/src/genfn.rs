//! Finite sequences, their generating functions and the convolution
//! coefficients that define annihilation.
//!
//! A sequence `s = s_0, s_{-1}, ..., s_{1-n}` is stored with `terms[j] = s_{-j}`,
//! so terms are read in the order they are written. Its generating
//! function is the Laurent polynomial `sum_i s_i x^i`.

use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};

/// A nonempty finite sequence over one domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq {
    spec: DomainSpec,
    terms: Vec<Elem>,
}

impl Seq {
    pub fn new(spec: DomainSpec, terms: Vec<Elem>) -> Result<Seq> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(t) = terms.iter().find(|t| t.spec() != spec) {
            return Err(Error::SpecMismatch(spec.to_string(), t.spec().to_string()));
        }
        Ok(Seq { spec, terms })
    }

    pub fn from_i64s(spec: DomainSpec, terms: &[i64]) -> Result<Seq> {
        Seq::new(spec, terms.iter().map(|&t| Elem::from_i64(spec, t)).collect())
    }

    /// Parses whitespace- or comma-separated element literals.
    pub fn parse(spec: DomainSpec, text: &str) -> Result<Seq> {
        let terms = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| spec.parse_elem(t))
            .collect::<Result<Vec<_>>>()?;
        Seq::new(spec, terms)
    }

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    /// `s_i` for `i <= 0`; zero outside `1-n..=0`.
    pub fn get(&self, i: i64) -> Elem {
        term_at(&self.terms, i, self.spec)
    }

    /// Largest `i <= 0` with `s_i != 0`.
    pub fn valuation(&self) -> Degree {
        match self.terms.iter().position(|t| !t.is_zero()) {
            Some(j) => Degree::Finite(-(j as i64)),
            None => Degree::NegInf,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.iter().all(Elem::is_zero)
    }

    /// First `k` terms, `1 <= k <= n`.
    pub fn prefix(&self, k: usize) -> Result<Seq> {
        if k == 0 || k > self.len() {
            return Err(Error::InvalidArgument(format!("prefix length {k} of {}", self.len())));
        }
        Ok(Seq { spec: self.spec, terms: self.terms[..k].to_vec() })
    }

    /// The sequence with one more term `s_{-n} = t`.
    pub fn extended(&self, t: Elem) -> Result<Seq> {
        let mut terms = self.terms.clone();
        terms.push(t);
        Seq::new(self.spec, terms)
    }
}

fn term_at(terms: &[Elem], i: i64, spec: DomainSpec) -> Elem {
    if i > 0 || -i >= terms.len() as i64 {
        Elem::zero(spec)
    } else {
        terms[(-i) as usize].clone()
    }
}

/// `(phi * s)_i` over a raw term slice.
pub(crate) fn conv_at(phi: &Poly, terms: &[Elem], i: i64) -> Elem {
    let c = phi.coeffs();
    let lo = i.max(0);
    let hi = (i + terms.len() as i64 - 1).min(c.len() as i64 - 1);
    Elem::sum_of_products(phi.spec(), (lo..=hi).map(|j| (&c[j as usize], &terms[(j - i) as usize])))
}

/// Coefficient of `x^i` in `phi * s`.
pub fn conv_coeff(phi: &Poly, s: &Seq, i: i64) -> Elem {
    conv_at(phi, &s.terms, i)
}

/// The `f2` with `x f2 = [phi * s]`, the polynomial part of `phi * s` divided by `x`.
pub fn bracket_numerator(phi: &Poly, s: &Seq) -> Poly {
    let coeffs = match phi.degree() {
        Degree::NegInf => Vec::new(),
        Degree::Finite(d) => (1..=d).map(|i| conv_at(phi, &s.terms, i)).collect(),
    };
    Poly::from_coeffs(phi.spec(), coeffs).expect("same domain")
}

/// Whether `phi` annihilates `s`: `(phi * s)_i = 0` for `|phi|+1-n <= i <= 0`.
pub fn is_annihilator(phi: &Poly, s: &Seq) -> Result<bool> {
    let d = phi.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let n = s.len() as i64;
    Ok((d + 1 - n..=0).all(|i| conv_at(phi, &s.terms, i).is_zero()))
}

/// Discrepancy `(g1 * t)_{|g1| - n}` where `t` has `n + 1` terms.
pub fn discrepancy(g1: &Poly, t: &Seq) -> Result<Elem> {
    let d = g1.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let n = t.len() as i64 - 1;
    if d > n {
        return Err(Error::DegreeTooLarge { degree: d, limit: n });
    }
    Ok(conv_at(g1, &t.terms, d - n))
}

/// Valuation (largest exponent with nonzero coefficient) of `phi * s - x g`.
pub fn residual_valuation(phi: &Poly, g: &Poly, s: &Seq) -> Degree {
    let n = s.len() as i64;
    let top = phi.degree().max(g.degree() + 1);
    let Degree::Finite(top) = top else {
        return Degree::NegInf;
    };
    for i in (1 - n..=top).rev() {
        let mut c = conv_at(phi, &s.terms, i);
        if i >= 1 {
            c = &c - &g.coeff(i - 1);
        }
        if !c.is_zero() {
            return Degree::Finite(i);
        }
    }
    Degree::NegInf
}

/// A candidate solution `(f1, f2)`, read as the rational function `x f2 / f1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionPair {
    pub f1: Poly,
    pub f2: Poly,
}

impl SolutionPair {
    pub fn new(f1: Poly, f2: Poly) -> Result<SolutionPair> {
        if f1.spec() != f2.spec() {
            return Err(Error::SpecMismatch(f1.spec().to_string(), f2.spec().to_string()));
        }
        Ok(SolutionPair { f1, f2 })
    }

    /// `f1` paired with its bracket numerator for `s`.
    pub fn for_sequence(f1: Poly, s: &Seq) -> SolutionPair {
        let f2 = bracket_numerator(&f1, s);
        SolutionPair { f1, f2 }
    }

    pub fn spec(&self) -> DomainSpec {
        self.f1.spec()
    }

    pub fn zero(spec: DomainSpec) -> SolutionPair {
        SolutionPair { f1: Poly::zero(spec), f2: Poly::zero(spec) }
    }

    pub fn scale(&self, c: &Elem) -> SolutionPair {
        SolutionPair { f1: self.f1.scale(c), f2: self.f2.scale(c) }
    }

    pub fn shift(&self, k: usize) -> SolutionPair {
        SolutionPair { f1: self.f1.shift(k), f2: self.f2.shift(k) }
    }

    pub fn mul_poly(&self, p: &Poly) -> SolutionPair {
        SolutionPair { f1: p * &self.f1, f2: p * &self.f2 }
    }

    pub fn add(&self, other: &SolutionPair) -> SolutionPair {
        SolutionPair { f1: &self.f1 + &other.f1, f2: &self.f2 + &other.f2 }
    }

    pub fn sub(&self, other: &SolutionPair) -> SolutionPair {
        SolutionPair { f1: &self.f1 - &other.f1, f2: &self.f2 - &other.f2 }
    }

    /// Both components divided by the leading coefficient of `f1`.
    pub fn monic(&self) -> Result<SolutionPair> {
        let lc = self.f1.lead().ok_or(Error::ZeroPolynomial)?;
        let inv = lc.inverse().ok_or_else(|| Error::NotInvertible(lc.to_string()))?;
        Ok(self.scale(&inv))
    }

    /// `f1` annihilates `s` and `f2` is its bracket numerator.
    pub fn is_solution_for(&self, s: &Seq) -> bool {
        !self.f1.is_zero()
            && is_annihilator(&self.f1, s).unwrap_or(false)
            && self.f2 == bracket_numerator(&self.f1, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn geometric(spec: DomainSpec, m: i64, n: usize) -> Seq {
        // s_i = m^{-i}
        let mut t = Vec::new();
        let mut v = Elem::one(spec);
        for _ in 0..n {
            t.push(v.clone());
            v = &v * &Elem::from_i64(spec, m);
        }
        Seq::new(spec, t).unwrap()
    }

    #[test]
    fn geometric_annihilated() {
        let z = DomainSpec::INT;
        let s = geometric(z, 3, 6);
        let phi = Poly::from_i64s(z, &[-3, 1]);
        for i in -4..=0 {
            assert!(conv_coeff(&phi, &s, i).is_zero());
        }
        assert!(is_annihilator(&phi, &s).unwrap());
        assert_eq!(bracket_numerator(&phi, &s), Poly::one(z));
    }

    #[test]
    fn small_conv() {
        let z = DomainSpec::INT;
        let s = Seq::from_i64s(z, &[7]).unwrap();
        assert_eq!(conv_coeff(&Poly::one(z), &s, 0), Elem::from_i64(z, 7));
        let s = Seq::from_i64s(z, &[2, 1]).unwrap();
        let f1 = Poly::from_i64s(z, &[-1, 2]);
        assert!(conv_coeff(&f1, &s, 0).is_zero());
        assert_eq!(bracket_numerator(&f1, &s), Poly::from_i64s(z, &[4]));
    }

    #[test]
    fn brackets_of_examples() {
        let z = DomainSpec::INT;
        let n = 5;
        let mut t = vec![0; n];
        t[n - 1] = 9;
        let s = Seq::from_i64s(z, &t).unwrap();
        let xn = Poly::monomial(Elem::one(z), n);
        assert_eq!(bracket_numerator(&xn, &s), Poly::from_i64s(z, &[9]));

        let mut t = vec![0; n];
        t[0] = 1;
        let s = Seq::from_i64s(z, &t).unwrap();
        let f1 = &xn + &Poly::one(z);
        assert_eq!(bracket_numerator(&f1, &s), Poly::monomial(Elem::one(z), n - 1));
    }

    #[test]
    fn annihilator_checks() {
        let g2 = DomainSpec::GF2;
        let s = Seq::from_i64s(g2, &[0, 1, 1, 0, 0, 1, 0, 1]).unwrap();
        assert!(is_annihilator(&Poly::from_i64s(g2, &[0, 1, 1, 0, 1]), &s).unwrap());
        assert!(!is_annihilator(&Poly::one(g2), &s).unwrap());
        assert_eq!(is_annihilator(&Poly::zero(g2), &s), Err(Error::ZeroPolynomial));
        assert!(is_annihilator(&Poly::monomial(Elem::one(g2), 8), &s).unwrap());
    }

    #[test]
    fn discrepancy_examples() {
        let z = DomainSpec::INT;
        let (a, b, c) = (3, 5, 11);
        let t = Seq::from_i64s(z, &[a, b, c]).unwrap();
        let g1 = Poly::from_i64s(z, &[-b, a]);
        assert_eq!(discrepancy(&g1, &t).unwrap(), Elem::from_i64(z, a * c - b * b));

        let k = 4;
        let mut terms = vec![0; k - 1];
        terms.extend([6, 13]);
        let t = Seq::from_i64s(z, &terms).unwrap();
        let xk = Poly::monomial(Elem::one(z), k);
        assert_eq!(discrepancy(&xk, &t).unwrap(), Elem::from_i64(z, 13));
        let big = Poly::monomial(Elem::one(z), 9);
        assert!(matches!(discrepancy(&big, &t), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn valuation() {
        let z = DomainSpec::INT;
        assert_eq!(Seq::from_i64s(z, &[0, 0, 4]).unwrap().valuation(), Degree::Finite(-2));
        assert_eq!(Seq::from_i64s(z, &[0, 0]).unwrap().valuation(), Degree::NegInf);
        assert_eq!(Seq::new(z, vec![]), Err(Error::EmptySequence));
    }

    fn case() -> impl Strategy<Value = (Poly, Seq, i64)> {
        let g3 = DomainSpec::gfp(3).unwrap();
        (
            proptest::collection::vec(0i64..3, 1..6),
            proptest::collection::vec(0i64..3, 1..9),
            0i64..3,
        )
            .prop_filter_map("nonzero phi", move |(c, t, a)| {
                let p = Poly::from_i64s(g3, &c);
                (!p.is_zero()).then(|| (p, Seq::from_i64s(g3, &t).unwrap(), a))
            })
    }

    proptest! {
        #[test]
        fn valuation_criterion((phi, s, _a) in case()) {
            let f2 = bracket_numerator(&phi, &s);
            let v = residual_valuation(&phi, &f2, &s);
            let bound = phi.degree() - s.len() as i64;
            prop_assert_eq!(is_annihilator(&phi, &s).unwrap(), v <= bound);
        }

        #[test]
        fn extension_shrinks_annihilators((phi, s, a) in case()) {
            let t = s.extended(Elem::from_i64(s.spec(), a)).unwrap();
            let ann_s = is_annihilator(&phi, &s).unwrap();
            let ann_t = is_annihilator(&phi, &t).unwrap();
            if ann_t {
                prop_assert!(ann_s);
            }
            if phi.degree() <= s.len() as i64 {
                let delta = discrepancy(&phi, &t).unwrap();
                prop_assert_eq!(ann_s && delta.is_zero(), ann_t);
            }
        }
    }
}
