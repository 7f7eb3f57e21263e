//! Pairing, minimal systems and the decomposition of solutions.
//!
//! Every `f` decomposes as `nabla f1 = m' lambda1 - m lambda'1` with
//! `m = <f, lambda>` and `m' = <f, lambda'>`. The degrees of `m`, `m'` decide
//! whether `f1` annihilates `s`, and over a finite field they parametrise
//! all solutions of a given degree.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cf::{pq_for_n, CfExpansion};
use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::genfn::{bracket_numerator, is_annihilator, SolutionPair, Seq};
use crate::poly::{Degree, Poly};
use crate::solver::{minimal_solution, SeqClass};

/// `<f, g> = f2 g1 - f1 g2`.
pub fn pairing(f: &SolutionPair, g: &SolutionPair) -> Poly {
    &(&f.f2 * &g.f1) - &(&f.f1 * &g.f2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemMode {
    Essential,
    PseudoGeometric,
}

/// `(lambda, n', lambda', nabla)` for a nontrivial sequence. In
/// pseudo-geometric mode `lambda' = (1, 0)` and `n'` is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSystem {
    pub lambda: SolutionPair,
    pub n_prime: Option<usize>,
    pub lambda_p: SolutionPair,
    pub nabla: Elem,
    pub mode: SystemMode,
    /// Length of the sequence the system belongs to.
    pub n: usize,
}

impl MinimalSystem {
    pub fn lc(&self) -> usize {
        self.lambda.f1.deg()
    }

    /// `e = n + 1 - 2 LC`.
    pub fn e(&self) -> i64 {
        self.n as i64 + 1 - 2 * self.lc() as i64
    }

    /// Linear complexity of the shorter sequence `s'`.
    pub fn lc_prime(&self) -> Option<usize> {
        self.n_prime.map(|np| np + 1 - self.lc())
    }
}

/// Minimal system built from the solver state.
pub fn minimal_system_of(s: &Seq) -> Result<MinimalSystem> {
    let st = minimal_solution(s);
    let class = SeqClass::from_profile(st.profile());
    let spec = s.spec();
    match class {
        SeqClass::Trivial => Err(Error::TrivialSequence),
        SeqClass::PseudoGeometric => {
            let lambda = st.mu().clone();
            let lambda_p = SolutionPair { f1: Poly::one(spec), f2: Poly::zero(spec) };
            if st.mu_prime() != &lambda_p || lambda.f2.degree() != Degree::Finite(0) {
                return Err(Error::Invariant("pseudo-geometric solver state malformed".into()));
            }
            let nabla = lambda.f2.coeffs()[0].clone();
            Ok(MinimalSystem {
                lambda,
                n_prime: None,
                lambda_p,
                nabla,
                mode: SystemMode::PseudoGeometric,
                n: s.len(),
            })
        }
        SeqClass::Essential { n_prime } => Ok(MinimalSystem {
            lambda: st.mu().clone(),
            n_prime: Some(n_prime),
            lambda_p: st.mu_prime().clone(),
            nabla: st.nabla().clone(),
            mode: SystemMode::Essential,
            n: s.len(),
        }),
    }
}

/// Minimal system built from convergents: `(q^(i), n_i - 1, q^(i-1), (-1)^(i-1))`,
/// or `(q^(1), (1,0), 1)` on the first cell when `S_0 != 0`.
pub fn minimal_system_from_cf(exp: &CfExpansion, s: &Seq) -> Result<MinimalSystem> {
    let n = s.len();
    let (i, q, q_prev) = pq_for_n(exp, n as u64)?;
    let spec = s.spec();
    if i == 0 {
        return Err(Error::TrivialSequence);
    }
    if i == 1 && !s.get(0).is_zero() {
        return Ok(MinimalSystem {
            lambda: q,
            n_prime: None,
            lambda_p: q_prev,
            nabla: Elem::one(spec),
            mode: SystemMode::PseudoGeometric,
            n,
        });
    }
    let sign = if i % 2 == 1 { Elem::one(spec) } else { Elem::one(spec).neg() };
    Ok(MinimalSystem {
        lambda: q,
        n_prime: Some(exp.partition[i] as usize - 1),
        lambda_p: q_prev,
        nabla: sign,
        mode: SystemMode::Essential,
        n,
    })
}

/// `(m, m') = (<f, lambda>, <f, lambda'>)`, for any pair `f`.
pub fn multipliers(f: &SolutionPair, sys: &MinimalSystem) -> (Poly, Poly) {
    (pairing(f, &sys.lambda), pairing(f, &sys.lambda_p))
}

/// Outcome of [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub m: Poly,
    pub m_p: Poly,
    /// `nabla f1 = m' lambda1 - m lambda'1`.
    pub reconstruction_ok: bool,
    /// `nabla f2 = m' lambda2 - m lambda'2`; checked when `|f1| <= n`.
    pub numerator_ok: Option<bool>,
    /// All applicable degree bounds hold.
    pub bounds_ok: bool,
}

/// Decomposes a solution `f` of `s` against `sys`.
pub fn decompose(f: &SolutionPair, s: &Seq, sys: &MinimalSystem) -> Result<Decomposition> {
    if !is_annihilator(&f.f1, s)? {
        return Err(Error::NotAnnihilator);
    }
    if f.f2 != bracket_numerator(&f.f1, s) {
        return Err(Error::NumeratorMismatch);
    }
    let n = s.len() as i64;
    let lc = sys.lc() as i64;
    let d1 = f.f1.degree();
    let (m, m_p) = multipliers(f, sys);
    let l = &sys.lambda;
    let lp = &sys.lambda_p;
    let reconstruction_ok = f.f1.scale(&sys.nabla) == &(&m_p * &l.f1) - &(&m * &lp.f1);
    let short = d1 <= n;
    let numerator_ok =
        short.then(|| f.f2.scale(&sys.nabla) == &(&m_p * &l.f2) - &(&m * &lp.f2));

    let mut bounds_ok = m_p.degree() == d1 - lc && m.degree() <= d1 + lc - n - 1;
    if short {
        bounds_ok &= m_p.degree() <= n - lc && m.degree() <= lc - 1;
    }
    if let Some(lcp) = sys.lc_prime() {
        bounds_ok &= m.degree() + lcp as i64 <= d1 - 1;
        if short && !lp.f2.is_zero() {
            bounds_ok &= m.degree() + lp.f2.degree() <= f.f2.degree() - 1;
            bounds_ok &= f.f2.degree() == m_p.degree() + l.f2.degree();
        }
    }
    Ok(Decomposition { m, m_p, reconstruction_ok, numerator_ok, bounds_ok })
}

/// Membership in `Ann(s)` decided from the degrees of `m`, `m'` alone.
pub fn is_annihilator_by_criterion(f1: &Poly, s: &Seq, sys: &MinimalSystem) -> Result<bool> {
    let d1 = f1.degree();
    if d1.is_neg_inf() {
        return Err(Error::ZeroPolynomial);
    }
    let f = SolutionPair::for_sequence(f1.clone(), s);
    let (m, m_p) = multipliers(&f, sys);
    let n = s.len() as i64;
    let lc = sys.lc() as i64;
    Ok(m_p.degree() == d1 - lc && m.degree() <= d1 + lc - n - 1)
}

fn require_finite(spec: DomainSpec) -> Result<u64> {
    spec.order().ok_or_else(|| Error::NotAFiniteField(spec.to_string()))
}

fn check_degree(d: i64, lc: usize, n: usize) -> Result<()> {
    if d < lc as i64 || d > n as i64 {
        return Err(Error::DegreeOutOfRange { d, lo: lc, hi: n });
    }
    Ok(())
}

/// Number of polynomials of degree exactly `k` over a field with `q` elements.
fn n_k(q: u64, k: u64) -> BigUint {
    BigUint::from(q - 1) * BigUint::from(q).pow(k as u32)
}

/// Number of solutions `f` of `s` with `|f1| = d`.
pub fn count_solutions(s: &Seq, d: i64) -> Result<BigUint> {
    let q = require_finite(s.spec())?;
    let st = minimal_solution(s);
    let lc = st.lc();
    check_degree(d, lc, s.len())?;
    let top = d - lc as i64 - st.e();
    let mut inner = BigUint::one();
    for k in 0..=top {
        inner += n_k(q, k as u64);
    }
    Ok(n_k(q, (d - lc as i64) as u64) * inner)
}

/// Polynomials of degree exactly `k`, or of degree at most `k` (zero included)
/// when `exact` is false.
pub(crate) fn polys(spec: DomainSpec, k: i64, exact: bool) -> Vec<Poly> {
    let q = spec.order().expect("finite field");
    let mut out = Vec::new();
    if k < 0 {
        if !exact {
            out.push(Poly::zero(spec));
        }
        return out;
    }
    let len = k as usize + 1;
    let mut digits = vec![0u64; len];
    if exact {
        digits[k as usize] = 1;
    }
    loop {
        let coeffs = digits.iter().map(|&i| Elem::from_index(spec, i).unwrap()).collect();
        out.push(Poly::from_coeffs(spec, coeffs).unwrap());
        let mut j = 0;
        loop {
            if j == len {
                return out;
            }
            digits[j] += 1;
            if digits[j] < q {
                break;
            }
            digits[j] = if exact && j == len - 1 { 1 } else { 0 };
            if exact && j == len - 1 {
                return out;
            }
            j += 1;
        }
    }
}

/// A solution together with its generating multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSolution {
    pub f: SolutionPair,
    pub phi_p: Poly,
    pub phi: Poly,
}

/// All solutions with `|f1| = d`, as `phi' mu - phi mu'`.
pub fn enumerate_solutions(s: &Seq, d: i64, budget: u64) -> Result<Vec<EnumeratedSolution>> {
    require_finite(s.spec())?;
    let count = count_solutions(s, d)?;
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: count.to_string(), budget });
    }
    let st = minimal_solution(s);
    let (mu, mu_p) = (st.mu(), st.mu_prime());
    let lc = st.lc() as i64;
    let spec = s.spec();
    let phis = polys(spec, d - lc - st.e(), false);
    let mut out = Vec::new();
    for phi_p in polys(spec, d - lc, true) {
        let base = mu.mul_poly(&phi_p);
        for phi in &phis {
            out.push(EnumeratedSolution {
                f: base.sub(&mu_p.mul_poly(phi)),
                phi_p: phi_p.clone(),
                phi: phi.clone(),
            });
        }
    }
    Ok(out)
}

/// Gcd relations between a solution and its multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdReport {
    pub gcd_f: Poly,
    pub gcd_m: Poly,
    pub equal: bool,
    /// When `|f1| <= n - LC`: whether `m = 0` and `nabla f = m' mu`.
    pub multiple_of_lambda: Option<bool>,
    /// When `|f1| <= n - LC` and `gcd(f1, f2) = 1`: whether `f1` is minimal.
    pub minimal: Option<bool>,
}

pub fn gcd_checks(f: &SolutionPair, s: &Seq, sys: &MinimalSystem) -> Result<GcdReport> {
    if !s.spec().is_field() {
        return Err(Error::NotAField(s.spec().to_string()));
    }
    let dec = decompose(f, s, sys)?;
    let n = s.len() as i64;
    if f.f1.degree() > n {
        return Err(Error::DegreeOutOfRange { d: f.f1.deg() as i64, lo: 0, hi: s.len() });
    }
    let gcd_f = f.f1.gcd(&f.f2)?;
    let gcd_m = dec.m.gcd(&dec.m_p)?;
    let equal = gcd_f == gcd_m;
    let lc = sys.lc() as i64;
    let (mut multiple_of_lambda, mut minimal) = (None, None);
    if f.f1.degree() <= n - lc {
        let scaled = f.scale(&sys.nabla);
        multiple_of_lambda = Some(dec.m.is_zero() && scaled == sys.lambda.mul_poly(&dec.m_p));
        if gcd_f.degree() == Degree::Finite(0) {
            minimal = Some(dec.m_p.degree() == 0 && f.f1.degree() == lc);
        }
    }
    Ok(GcdReport { gcd_f, gcd_m, equal, multiple_of_lambda, minimal })
}

/// Convenience: the count as `u64` when it fits.
pub fn count_as_u64(c: &BigUint) -> Option<u64> {
    if c.is_zero() {
        return Some(0);
    }
    u64::try_from(c).ok()
}
