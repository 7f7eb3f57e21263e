//! Continued fractions of generating functions over a field.
//!
//! Convergents satisfy `q^(-1) = (0,1)`, `q^(0) = (1,0)` and
//! `q^(i+1) = a_{i+1} q^(i) + q^(i-1)`. Cell `i` of the partition is
//! `[n_i, n_{i+1})` with `n_0 = 1` and `n_i = |q1^(i-1)| + |q1^(i)|`; on that
//! cell `q^(i)` is a minimal solution of the prefix `S|n`.
//!
//! A rational generating function is expanded by Euclid's algorithm on
//! (denominator, numerator). A finite prefix is expanded by streaming it
//! through the normalised solver.

use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::genfn::{SolutionPair, Seq};
use crate::poly::{Degree, Poly};
use crate::solver::{Branch, SolverOptions, SolverState};

/// The rational function `x num / den` viewed as a series in `x^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Requires a field, `den != 0` and `|num| < |den|`. Stored in lowest
    /// terms with monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RationalFn> {
        let spec = den.spec();
        if num.spec() != spec {
            return Err(Error::SpecMismatch(num.spec().to_string(), spec.to_string()));
        }
        if !spec.is_field() {
            return Err(Error::NotAField(spec.to_string()));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.degree() >= den.degree() {
            return Err(Error::PositiveValuation);
        }
        let g = num.gcd(&den)?;
        let (num, den) = (num.div_rem(&g)?.0, den.div_rem(&g)?.0);
        let inv = den.lead().unwrap().inverse().unwrap();
        Ok(RationalFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn spec(&self) -> DomainSpec {
        self.den.spec()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// The first `n` coefficients `S_0, S_{-1}, ..., S_{1-n}`.
    pub fn series(&self, n: usize) -> Result<Seq> {
        let spec = self.spec();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let d = self.den.deg() as i64;
        let inv = self.den.lead().unwrap().inverse().unwrap();
        let mut terms: Vec<Elem> = Vec::with_capacity(n);
        // den * S = x num, compared at x^{d+1-k}... solved for S_{-j}.
        for j in 0..n as i64 {
            let i = d - j;
            let mut rhs = self.num.coeff(i - 1);
            for (t, c) in self.den.coeffs().iter().enumerate().take(d as usize) {
                let idx = j - (d - t as i64);
                if idx >= 0 {
                    rhs = &rhs - &(c * &terms[idx as usize]);
                }
            }
            terms.push(&rhs * &inv);
        }
        Seq::new(spec, terms)
    }
}

/// Upper end of the last known partition cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellEnd {
    /// Expansion terminated; the last cell is unbounded.
    Infinite,
    /// The last cell ends just before this `n`.
    At(u64),
    /// Only known to extend past this `n`.
    Beyond(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    spec: DomainSpec,
    /// `a_1, a_2, ...` for the determined convergents.
    pub quotients: Vec<Poly>,
    /// `q^(0), q^(1), ...`, only those that are determined.
    pub convergents: Vec<SolutionPair>,
    /// `|q1^(i)|` for every cell seen, including a trailing undetermined one.
    pub degrees: Vec<usize>,
    /// `n_0, n_1, ..., n_k`.
    pub partition: Vec<u64>,
    pub end: CellEnd,
    pub terminated: bool,
    pub precision_exhausted: bool,
}

impl CfExpansion {
    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    /// The index `i` with `n` in `[n_i, n_{i+1})`.
    pub fn cell_of(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(Error::OutOfRange(n));
        }
        let i = self.partition.iter().rposition(|&p| p <= n).unwrap();
        if i + 1 == self.partition.len() {
            match self.end {
                CellEnd::At(e) if n >= e => return Err(Error::OutOfRange(n)),
                CellEnd::Beyond(b) if n > b => return Err(Error::OutOfRange(n)),
                _ => {}
            }
        }
        Ok(i)
    }

    /// `q^(i)` for `i >= -1`.
    pub fn convergent(&self, i: i64) -> Option<SolutionPair> {
        if i == -1 {
            return Some(SolutionPair { f1: Poly::zero(self.spec), f2: Poly::one(self.spec) });
        }
        self.convergents.get(usize::try_from(i).ok()?).cloned()
    }

    /// Monic view of `q^(i)`.
    pub fn monic_convergent(&self, i: usize) -> Option<SolutionPair> {
        self.convergents.get(i).map(|q| q.monic().expect("field"))
    }
}

/// Expands `S` by Euclid's algorithm, computing at most `max_i` quotients.
pub fn cf_expand_rational(s: &RationalFn, max_i: usize) -> Result<CfExpansion> {
    if max_i == 0 {
        return Err(Error::InvalidArgument("max_i must be at least 1".into()));
    }
    let spec = s.spec();
    let mut r_prev = s.den.clone();
    let mut r = s.num.clone();
    let mut q_prev = SolutionPair { f1: Poly::zero(spec), f2: Poly::one(spec) };
    let mut q = SolutionPair { f1: Poly::one(spec), f2: Poly::zero(spec) };
    let mut exp = CfExpansion {
        spec,
        quotients: Vec::new(),
        convergents: vec![q.clone()],
        degrees: vec![0],
        partition: vec![1],
        end: CellEnd::Infinite,
        terminated: false,
        precision_exhausted: false,
    };
    while !r.is_zero() && exp.quotients.len() < max_i {
        let (a, rem) = r_prev.div_rem(&r)?;
        let q_next = q.mul_poly(&a).add(&q_prev);
        let d_prev = exp.degrees.last().copied().unwrap();
        let d_next = q_next.f1.deg();
        exp.partition.push((d_prev + d_next) as u64);
        exp.degrees.push(d_next);
        exp.quotients.push(a);
        exp.convergents.push(q_next.clone());
        r_prev = std::mem::replace(&mut r, rem);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    exp.terminated = r.is_zero();
    if !exp.terminated {
        let d = q.f1.deg();
        let next = d + r_prev.deg() - r.deg();
        exp.end = CellEnd::At((d + next) as u64);
    }
    Ok(exp)
}

/// Expands from the finite prefix `s`. A convergent is emitted once some
/// prefix inside its cell has `e > 0`; the trailing cell's convergent may
/// stay undetermined, in which case only its degree is recorded.
pub fn cf_expand_prefix(s: &Seq) -> Result<CfExpansion> {
    let spec = s.spec();
    if !spec.is_field() {
        return Err(Error::NotAField(spec.to_string()));
    }
    let opts = SolverOptions { normalized: true, ..SolverOptions::default() };
    let mut st = SolverState::with_options(spec, opts)?;
    let mut exp = CfExpansion {
        spec,
        quotients: Vec::new(),
        convergents: vec![SolutionPair { f1: Poly::one(spec), f2: Poly::zero(spec) }],
        degrees: vec![0],
        partition: vec![1],
        end: CellEnd::Beyond(s.len() as u64),
        terminated: false,
        precision_exhausted: true,
    };
    for (k, t) in s.terms().iter().enumerate() {
        let rec = st.step(t.clone())?;
        let n = (k + 1) as u64;
        if rec.branch == Branch::Jump {
            exp.partition.push(n);
            exp.degrees.push(st.lc());
        }
        let i = exp.degrees.len() - 1;
        if st.e() > 0 && exp.convergents.len() == i {
            let prev = &exp.convergents[i - 1];
            let mu = st.mu();
            let pair = &(&mu.f2 * &prev.f1) - &(&mu.f1 * &prev.f2);
            if pair.degree() != Degree::Finite(0) {
                return Err(Error::Invariant(format!("determinant {pair} is not a constant")));
            }
            let sign = if i % 2 == 1 { Elem::one(spec) } else { Elem::one(spec).neg() };
            let c = sign.exact_div(&pair.coeffs()[0])?;
            let q = mu.scale(&c);
            let (a, rem) = (&q.f1 - &exp.convergent(i as i64 - 2).unwrap().f1).div_rem(&prev.f1)?;
            if !rem.is_zero() {
                return Err(Error::Invariant("convergent recursion fails".into()));
            }
            exp.quotients.push(a);
            exp.convergents.push(q);
        }
    }
    Ok(exp)
}

/// The cell index of `n` with `q^(i)` and `q^(i-1)`.
pub fn pq_for_n(exp: &CfExpansion, n: u64) -> Result<(usize, SolutionPair, SolutionPair)> {
    let i = exp.cell_of(n)?;
    let q = exp.convergent(i as i64).ok_or(Error::OutOfRange(n))?;
    let q_prev = exp.convergent(i as i64 - 1).unwrap();
    Ok((i, q, q_prev))
}

/// `LC(S|n) = |q1^(i)|` for `n` in cell `i`.
pub fn lc_from_cf(exp: &CfExpansion, n: u64) -> Result<usize> {
    Ok(exp.degrees[exp.cell_of(n)?])
}

/// Monic minimal solution of a prefix long enough (`n >= 2 LC`) to pin the
/// recurrence down uniquely.
pub fn minimal_poly_of_lrs(s: &Seq) -> Result<SolutionPair> {
    if !s.spec().is_field() {
        return Err(Error::NotAField(s.spec().to_string()));
    }
    let opts = SolverOptions { normalized: true, ..SolverOptions::default() };
    let mut st = SolverState::with_options(s.spec(), opts)?;
    for t in s.terms() {
        st.step(t.clone())?;
    }
    let lc = st.lc();
    if 2 * lc > s.len() {
        return Err(Error::InsufficientTerms { n: s.len(), lc });
    }
    Ok(st.mu().clone())
}
