//! Minimal annihilators that do not vanish at a prescribed point `a`.
//!
//! If `mu1(a) = 0` then `mu'1(a) != 0`, and `x^M mu - mu'` with
//! `M = max(e, 0)` is a solution of least degree whose denominator is
//! nonzero at `a`.

use crate::decomp::polys;
use crate::domains::Elem;
use crate::error::{Error, Result};
use crate::genfn::{conv_at, SolutionPair, Seq};
use crate::poly::Poly;
use crate::solver::{minimal_solution, SolverState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonVanishResult {
    pub xi: SolutionPair,
    pub lc_at: usize,
    /// `max(e, 0)`.
    pub m: usize,
    /// True when `xi = x^M mu - mu'` rather than `mu` itself.
    pub used_extension: bool,
}

fn check_point(s: &Seq, a: &Elem) -> Result<()> {
    if a.spec() != s.spec() {
        return Err(Error::SpecMismatch(s.spec().to_string(), a.spec().to_string()));
    }
    Ok(())
}

fn vanishes(st: &SolverState, a: &Elem) -> Result<bool> {
    Ok(st.mu().f1.eval(a)?.is_zero())
}

pub fn nonvanishing_solution(s: &Seq, a: &Elem) -> Result<NonVanishResult> {
    check_point(s, a)?;
    let st = minimal_solution(s);
    let m = st.e().max(0) as usize;
    if !vanishes(&st, a)? {
        return Ok(NonVanishResult { xi: st.mu().clone(), lc_at: st.lc(), m, used_extension: false });
    }
    if st.mu_prime().f1.eval(a)?.is_zero() || st.mu().f2.eval(a)?.is_zero() {
        return Err(Error::Invariant("mu'1(a) or mu2(a) vanishes with mu1(a)".into()));
    }
    let xi = st.mu().shift(m).sub(st.mu_prime());
    Ok(NonVanishResult { lc_at: st.lc() + m, xi, m, used_extension: true })
}

/// Least degree of an annihilator not vanishing at `a`.
pub fn lc_at(s: &Seq, a: &Elem) -> Result<usize> {
    Ok(nonvanishing_solution(s, a)?.lc_at)
}

/// Every least-degree annihilator not vanishing at `a`, as
/// `phi' mu1 - phi mu'1` with `|phi'| = M`, `|phi| <= M - e`, `phi(a) != 0`.
pub fn min_set_at(s: &Seq, a: &Elem, budget: u64) -> Result<Vec<Poly>> {
    check_point(s, a)?;
    let spec = s.spec();
    let q = spec.order().ok_or_else(|| Error::NotAFiniteField(spec.to_string()))?;
    let st = minimal_solution(s);
    if !vanishes(&st, a)? {
        return Err(Error::MuDoesNotVanish);
    }
    let e = st.e();
    let m = e.max(0);
    let size = (m + (m - e) + 2) as u32;
    if (q as u128).checked_pow(size).map_or(true, |c| c > budget as u128) {
        return Err(Error::BudgetExceeded { needed: format!("{q}^{size}"), budget });
    }
    let phis: Vec<Poly> = polys(spec, m - e, false)
        .into_iter()
        .filter(|p| p.eval(a).map(|v| !v.is_zero()).unwrap_or(false))
        .collect();
    let (mu1, mu_p1) = (&st.mu().f1, &st.mu_prime().f1);
    let mut out = Vec::new();
    for phi_p in polys(spec, m, true) {
        let base = &phi_p * mu1;
        for phi in &phis {
            out.push(&base - &(phi * mu_p1));
        }
    }
    Ok(out)
}

/// Result of extending the sequence by one forcing term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// The appended term `s_{-n}`.
    pub term: Elem,
    /// Minimal solution of the extended sequence.
    pub nu: SolutionPair,
}

/// Appends a term making the discrepancy nonzero (trying `0`, then `1`)
/// and takes one more solver step. Requires `e >= 1` and `mu1(a) = 0`.
pub fn nonvanishing_by_extension(s: &Seq, a: &Elem) -> Result<Extension> {
    check_point(s, a)?;
    let mut st = minimal_solution(s);
    if !vanishes(&st, a)? {
        return Err(Error::MuDoesNotVanish);
    }
    if st.e() < 1 {
        return Err(Error::InvalidArgument(format!("needs e >= 1, have e = {}", st.e())));
    }
    let spec = s.spec();
    let mu1 = st.mu().f1.clone();
    for t in [Elem::zero(spec), Elem::one(spec)] {
        let mut terms = s.terms().to_vec();
        terms.push(t.clone());
        let delta = conv_at(&mu1, &terms, mu1.deg() as i64 - s.len() as i64);
        if !delta.is_zero() {
            st.step(t.clone())?;
            return Ok(Extension { term: t, nu: st.mu().clone() });
        }
    }
    Err(Error::NoForcingTerm)
}
