//! Exhaustive search over small finite fields.
//!
//! Nothing here calls the solver or the convolution helpers: candidates
//! are enumerated as coefficient vectors and the annihilation condition
//! is evaluated term by term.

use std::collections::BTreeMap;

use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::genfn::Seq;
use crate::poly::Poly;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Budget from `MINSEQ_ORACLE_BUDGET`, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("MINSEQ_ORACLE_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub lc: usize,
    /// Every annihilator of degree `lc`.
    pub witnesses: Vec<Poly>,
    /// Number of annihilators of each degree from `lc` up to `n`, as far as
    /// the budget allows.
    pub per_degree_counts: BTreeMap<usize, u64>,
}

fn field_order(s: &Seq) -> Result<u64> {
    s.spec().order().ok_or_else(|| Error::NotAFiniteField(s.spec().to_string()))
}

fn space_size(q: u64, d: usize, budget: u64) -> Result<u64> {
    match q.checked_pow(d as u32 + 1) {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded { needed: format!("{q}^{}", d + 1), budget }),
    }
}

/// `sum_j c_j s_{i-j} = 0` for every `i` with `d + 1 - n <= i <= 0`.
fn annihilates(c: &[Elem], s: &[Elem]) -> bool {
    let d = c.len() as i64 - 1;
    let n = s.len() as i64;
    let spec = c[0].spec();
    for i in (d + 1 - n)..=0 {
        let mut acc = Elem::zero(spec);
        for (j, cj) in c.iter().enumerate() {
            let k = i - j as i64;
            // s_k is stored at position -k
            if k <= 0 && k > -n {
                acc = &acc + &(cj * &s[(-k) as usize]);
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

fn horner(c: &[Elem], a: &Elem) -> Elem {
    let mut acc = Elem::zero(a.spec());
    for cj in c.iter().rev() {
        acc = &(&acc * a) + cj;
    }
    acc
}

/// Calls `visit` on every coefficient vector of degree exactly `d`.
fn for_each_poly(spec: DomainSpec, q: u64, d: usize, mut visit: impl FnMut(&[Elem])) {
    let table: Vec<Elem> = (0..q).map(|i| Elem::from_index(spec, i).unwrap()).collect();
    let mut idx = vec![0u64; d + 1];
    idx[d] = 1;
    let mut c: Vec<Elem> = idx.iter().map(|&i| table[i as usize].clone()).collect();
    loop {
        visit(&c);
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] < q {
                c[j] = table[idx[j] as usize].clone();
                break;
            }
            if j == d {
                return;
            }
            idx[j] = 0;
            c[j] = table[0].clone();
            j += 1;
        }
    }
}

/// All annihilators of `s` of degree exactly `d`.
pub fn brute_annihilators(s: &Seq, d: usize, budget: u64) -> Result<Vec<Poly>> {
    let q = field_order(s)?;
    space_size(q, d, budget)?;
    let mut out = Vec::new();
    for_each_poly(s.spec(), q, d, |c| {
        if annihilates(c, s.terms()) {
            out.push(Poly::from_coeffs(s.spec(), c.to_vec()).unwrap());
        }
    });
    Ok(out)
}

/// Number of annihilators of degree exactly `d`.
pub fn brute_count(s: &Seq, d: usize, budget: u64) -> Result<u64> {
    let q = field_order(s)?;
    space_size(q, d, budget)?;
    let mut count = 0;
    for_each_poly(s.spec(), q, d, |c| {
        if annihilates(c, s.terms()) {
            count += 1;
        }
    });
    Ok(count)
}

pub fn brute_lc(s: &Seq, budget: u64) -> Result<OracleReport> {
    let n = s.len();
    let mut lc = None;
    let mut witnesses = Vec::new();
    for d in 0..=n {
        let found = brute_annihilators(s, d, budget)?;
        if !found.is_empty() {
            lc = Some(d);
            witnesses = found;
            break;
        }
    }
    let lc = lc.ok_or_else(|| Error::Invariant("no annihilator of degree <= n".into()))?;
    let mut per_degree_counts = BTreeMap::new();
    per_degree_counts.insert(lc, witnesses.len() as u64);
    for d in lc + 1..=n {
        match brute_count(s, d, budget) {
            Ok(c) => {
                per_degree_counts.insert(d, c);
            }
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(OracleReport { lc, witnesses, per_degree_counts })
}

/// All annihilators of least degree among those with `f1(a) != 0`.
pub fn brute_min_set_at(s: &Seq, a: &Elem, budget: u64) -> Result<Vec<Poly>> {
    let q = field_order(s)?;
    if a.spec() != s.spec() {
        return Err(Error::SpecMismatch(s.spec().to_string(), a.spec().to_string()));
    }
    for d in 0..=s.len() {
        space_size(q, d, budget)?;
        let mut found = Vec::new();
        for_each_poly(s.spec(), q, d, |c| {
            if !horner(c, a).is_zero() && annihilates(c, s.terms()) {
                found.push(Poly::from_coeffs(s.spec(), c.to_vec()).unwrap());
            }
        });
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Err(Error::Invariant("no non-vanishing annihilator of degree <= n".into()))
}

pub fn brute_lc_at(s: &Seq, a: &Elem, budget: u64) -> Result<usize> {
    Ok(brute_min_set_at(s, a, budget)?[0].deg())
}
