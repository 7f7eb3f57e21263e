//! Iterative minimal-solution solver.
//!
//! The state carries a minimal solution `mu`, the auxiliary pair `mu'`,
//! the last nonzero discrepancy `delta'`, the exponent `e = k + 1 - 2 LC_k`
//! and the scalar `nabla` with `<mu, mu'> = mu2 mu'1 - mu1 mu'2 = nabla`.
//! Each term is consumed by [`SolverState::step`].

use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::genfn::{conv_at, SolutionPair, Seq};
use crate::poly::Poly;

/// Solver variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Keep `mu1` monic (fields only).
    pub normalized: bool,
    /// Track numerators `mu2`, `mu'2`. When off they stay zero.
    pub numerators: bool,
    /// Start from `mu' = (1, -1)` instead of `(0, -1)`.
    pub massey_init: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { normalized: false, numerators: true, massey_init: false }
    }
}

/// Which update a step performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Discrepancy zero, nothing changed but `e`.
    Unchanged,
    /// `e <= 0`: degree kept, `mu' ` untouched.
    Absorb,
    /// `e > 0`: degree jumps, old `mu` becomes `mu'`.
    Jump,
}

/// What happened while consuming one term. `delta_prime` and `e` are the
/// values in force when the branch was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub delta: Elem,
    pub delta_prime: Elem,
    pub e: i64,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState {
    spec: DomainSpec,
    opts: SolverOptions,
    terms: Vec<Elem>,
    mu: SolutionPair,
    mu_p: SolutionPair,
    delta_p: Elem,
    e: i64,
    nabla: Elem,
    profile: Vec<usize>,
    mul_count: u64,
}

impl SolverState {
    /// Fresh state with default options.
    pub fn new(spec: DomainSpec) -> SolverState {
        SolverState::with_options(spec, SolverOptions::default()).expect("default options")
    }

    pub fn with_options(spec: DomainSpec, opts: SolverOptions) -> Result<SolverState> {
        if opts.normalized && !spec.is_field() {
            return Err(Error::NotAField(spec.to_string()));
        }
        let one = Poly::one(spec);
        let minus_one = if opts.numerators { one.neg() } else { Poly::zero(spec) };
        let mu_p1 = if opts.massey_init { one.clone() } else { Poly::zero(spec) };
        Ok(SolverState {
            spec,
            opts,
            terms: Vec::new(),
            mu: SolutionPair { f1: one, f2: Poly::zero(spec) },
            mu_p: SolutionPair { f1: mu_p1, f2: minus_one },
            delta_p: Elem::one(spec),
            e: 1,
            nabla: Elem::one(spec),
            profile: Vec::new(),
            mul_count: 0,
        })
    }

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn options(&self) -> SolverOptions {
        self.opts
    }

    pub fn mu(&self) -> &SolutionPair {
        &self.mu
    }

    pub fn mu_prime(&self) -> &SolutionPair {
        &self.mu_p
    }

    pub fn delta_prime(&self) -> &Elem {
        &self.delta_p
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn nabla(&self) -> &Elem {
        &self.nabla
    }

    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    pub fn mul_count(&self) -> u64 {
        self.mul_count
    }

    /// Number of terms consumed.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear complexity of the terms consumed so far.
    pub fn lc(&self) -> usize {
        self.mu.f1.deg()
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    /// The consumed terms as a sequence, if any.
    pub fn sequence(&self) -> Option<Seq> {
        Seq::new(self.spec, self.terms.clone()).ok()
    }

    /// Consumes the next term.
    pub fn step(&mut self, term: Elem) -> Result<StepRecord> {
        if term.spec() != self.spec {
            return Err(Error::SpecMismatch(self.spec.to_string(), term.spec().to_string()));
        }
        self.terms.push(term);
        let k = self.terms.len() as i64 - 1;
        let mu1 = &self.mu.f1;
        let delta = conv_at(mu1, &self.terms, mu1.deg() as i64 - k);
        self.mul_count += mu1.len() as u64;

        let record_e = self.e;
        let record_dp = self.delta_p.clone();
        let branch = if delta.is_zero() {
            Branch::Unchanged
        } else if self.opts.normalized {
            self.update_normalized(&delta)
        } else {
            self.update(&delta)
        };
        self.e += 1;
        self.profile.push(self.mu.f1.deg());
        Ok(StepRecord { delta, delta_prime: record_dp, e: record_e, branch })
    }

    fn scaled(&mut self, c: &Elem, f: &SolutionPair) -> SolutionPair {
        self.mul_count += f.f1.len() as u64;
        if self.opts.numerators {
            self.mul_count += f.f2.len() as u64;
        }
        f.scale(c)
    }

    fn update(&mut self, delta: &Elem) -> Branch {
        let dp = self.delta_p.clone();
        let mu = self.mu.clone();
        let mu_p = self.mu_p.clone();
        self.mul_count += 1;
        if self.e <= 0 {
            let a = self.scaled(&dp, &mu);
            let b = self.scaled(delta, &mu_p).shift((-self.e) as usize);
            self.mu = a.sub(&b);
            self.nabla = &self.nabla * &dp;
            Branch::Absorb
        } else {
            let a = self.scaled(&dp, &mu).shift(self.e as usize);
            let b = self.scaled(delta, &mu_p);
            self.mu = a.sub(&b);
            self.mu_p = mu;
            self.delta_p = delta.clone();
            self.nabla = &self.nabla * delta;
            self.e = -self.e;
            Branch::Jump
        }
    }

    fn update_normalized(&mut self, delta: &Elem) -> Branch {
        let inv = self.delta_p.inverse().expect("nonzero discrepancy in a field");
        let rho = delta * &inv;
        self.mul_count += 1;
        let mu = self.mu.clone();
        let mu_p = self.mu_p.clone();
        if self.e <= 0 {
            let b = self.scaled(&rho, &mu_p).shift((-self.e) as usize);
            self.mu = mu.sub(&b);
            Branch::Absorb
        } else {
            let b = self.scaled(&rho, &mu_p);
            self.mu = mu.shift(self.e as usize).sub(&b);
            self.mu_p = mu;
            self.delta_p = delta.clone();
            self.mul_count += 1;
            self.nabla = &self.nabla * &rho;
            self.e = -self.e;
            Branch::Jump
        }
    }

    /// Checks the state invariants against the consumed terms.
    pub fn check_invariants(&self) -> Result<()> {
        let k = self.terms.len();
        let lc = self.lc();
        if self.e != k as i64 + 1 - 2 * lc as i64 {
            return Err(Error::Invariant(format!("e = {} but k = {k}, LC = {lc}", self.e)));
        }
        if self.nabla.is_zero() {
            return Err(Error::Invariant("nabla is zero".into()));
        }
        if self.opts.normalized && !self.mu.f1.lead().is_some_and(Elem::is_one) {
            return Err(Error::Invariant("mu1 not monic".into()));
        }
        if !self.opts.numerators {
            return Ok(());
        }
        let pairing = &(&self.mu.f2 * &self.mu_p.f1) - &(&self.mu.f1 * &self.mu_p.f2);
        if pairing != Poly::constant(self.nabla.clone()) {
            return Err(Error::Invariant(format!(
                "<mu, mu'> = {pairing}, nabla = {}",
                self.nabla
            )));
        }
        if let Some(s) = self.sequence() {
            if !self.mu.is_solution_for(&s) {
                return Err(Error::Invariant("mu is not a solution".into()));
            }
        }
        Ok(())
    }
}

/// Initial state `mu = (1,0)`, `mu' = (0,-1)`.
pub fn solver_init(spec: DomainSpec) -> SolverState {
    SolverState::new(spec)
}

/// Initial state with `mu'1 = 1`.
pub fn solver_init_massey(spec: DomainSpec) -> SolverState {
    let opts = SolverOptions { massey_init: true, ..SolverOptions::default() };
    SolverState::with_options(spec, opts).expect("valid options")
}

/// Pure form of [`SolverState::step`].
pub fn solver_step(state: &SolverState, term: Elem) -> Result<(SolverState, StepRecord)> {
    let mut next = state.clone();
    let rec = next.step(term)?;
    Ok((next, rec))
}

pub fn minimal_solution_with(s: &Seq, opts: SolverOptions) -> Result<SolverState> {
    let mut st = SolverState::with_options(s.spec(), opts)?;
    for t in s.terms() {
        st.step(t.clone())?;
    }
    Ok(st)
}

pub fn minimal_solution(s: &Seq) -> SolverState {
    minimal_solution_with(s, SolverOptions::default()).expect("default options")
}

/// Field-only variant keeping `mu1` monic.
pub fn minimal_solution_normalized(s: &Seq) -> Result<SolverState> {
    minimal_solution_with(s, SolverOptions { normalized: true, ..SolverOptions::default() })
}

/// `LC` of every prefix of `s`.
pub fn lc_profile(s: &Seq) -> Vec<usize> {
    let opts = SolverOptions { numerators: false, ..SolverOptions::default() };
    minimal_solution_with(s, opts).expect("default options").profile
}

/// Trivial, pseudo-geometric or essential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqClass {
    Trivial,
    PseudoGeometric,
    Essential { n_prime: usize },
}

impl SeqClass {
    pub fn from_profile(profile: &[usize]) -> SeqClass {
        let Some(&last) = profile.last() else {
            return SeqClass::Trivial;
        };
        if last == 0 {
            SeqClass::Trivial
        } else if profile.iter().all(|&l| l == 1) {
            SeqClass::PseudoGeometric
        } else {
            let j = profile.iter().rposition(|&l| l < last).expect("LC_1 <= 1 < LC_n or LC_1 = 0");
            SeqClass::Essential { n_prime: j + 1 }
        }
    }

    pub fn n_prime(&self) -> Option<usize> {
        match self {
            SeqClass::Essential { n_prime } => Some(*n_prime),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeqClass::Trivial => "Trivial",
            SeqClass::PseudoGeometric => "PseudoGeometric",
            SeqClass::Essential { .. } => "Essential",
        }
    }
}

pub fn classify(s: &Seq) -> SeqClass {
    SeqClass::from_profile(&lc_profile(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfn::is_annihilator;
    use proptest::prelude::*;

    fn gf2(t: &[i64]) -> Seq {
        Seq::from_i64s(DomainSpec::GF2, t).unwrap()
    }

    #[test]
    fn init_state() {
        let st = solver_init(DomainSpec::INT);
        assert_eq!(st.mu().f1, Poly::one(DomainSpec::INT));
        assert!(st.mu().f2.is_zero());
        assert!(st.mu_prime().f1.is_zero());
        assert_eq!(st.mu_prime().f2, Poly::from_i64s(DomainSpec::INT, &[-1]));
        assert_eq!(st.e(), 1);
        assert!(st.nabla().is_one());
        assert!(st.profile().is_empty());
        st.check_invariants().unwrap();
    }

    #[test]
    fn integer_three_terms() {
        let z = DomainSpec::INT;
        let st = minimal_solution(&Seq::from_i64s(z, &[1, 1, 2]).unwrap());
        assert_eq!(st.mu().f1, Poly::from_i64s(z, &[-1, -1, 1]));
        st.check_invariants().unwrap();
    }

    #[test]
    fn generic_two_terms() {
        let z = DomainSpec::INT;
        let (a, b, c) = (3, 7, 2);
        let mut st = solver_init(z);
        st.step(Elem::from_i64(z, a)).unwrap();
        st.step(Elem::from_i64(z, b)).unwrap();
        assert_eq!(st.mu().f1, Poly::from_i64s(z, &[-b, a]));
        assert_eq!(st.mu().f2, Poly::from_i64s(z, &[a * a]));
        assert_eq!(st.mu_prime().f1, Poly::one(z));
        assert!(st.mu_prime().f2.is_zero());
        assert_eq!(st.e(), 1);
        let rec = st.step(Elem::from_i64(z, c)).unwrap();
        assert_eq!(rec.delta, Elem::from_i64(z, a * c - b * b));
        assert_eq!(st.nabla(), &Elem::from_i64(z, a * a * (a * c - b * b)));
    }

    #[test]
    fn zero_terms() {
        let st = minimal_solution(&gf2(&[0, 0, 0, 0]));
        assert_eq!(st.mu().f1, Poly::one(DomainSpec::GF2));
        assert_eq!(st.profile(), &[0, 0, 0, 0]);
        assert_eq!(classify(&gf2(&[0, 0, 0])), SeqClass::Trivial);
    }

    #[test]
    fn impulse_at_end() {
        let z = DomainSpec::INT;
        let st = minimal_solution(&Seq::from_i64s(z, &[0, 0, 0, 5]).unwrap());
        assert_eq!(st.mu().f1, Poly::monomial(Elem::one(z), 4));
        assert_eq!(st.mu().f2, Poly::from_i64s(z, &[5]));
        assert_eq!(st.mu_prime(), &SolutionPair { f1: Poly::one(z), f2: Poly::zero(z) });
        assert_eq!(st.nabla(), &Elem::from_i64(z, 5));
        assert_eq!(
            classify(&Seq::from_i64s(z, &[0, 0, 0, 5]).unwrap()),
            SeqClass::Essential { n_prime: 3 }
        );
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&gf2(&[1, 0, 0, 0])), SeqClass::PseudoGeometric);
        assert_eq!(classify(&gf2(&[0, 1, 1, 0, 0, 1, 0, 1])), SeqClass::Essential { n_prime: 6 });
        assert_eq!(lc_profile(&gf2(&[0, 1, 1, 0, 0, 1, 0, 1])), vec![0, 2, 2, 2, 3, 3, 4, 4]);
    }

    #[test]
    fn normalized_geometric() {
        let g7 = DomainSpec::gfp(7).unwrap();
        let s = Seq::from_i64s(g7, &[3, 6, 5, 3]).unwrap(); // ratio 2
        let mut st = SolverState::with_options(
            g7,
            SolverOptions { normalized: true, ..SolverOptions::default() },
        )
        .unwrap();
        st.step(s.get(0)).unwrap();
        assert_eq!(st.mu().f1, Poly::x(g7));
        assert_eq!(st.mu().f2, Poly::from_i64s(g7, &[3]));
        for j in 1..4 {
            st.step(s.get(-j)).unwrap();
            assert_eq!(st.mu().f1, Poly::from_i64s(g7, &[-2, 1]));
            assert_eq!(st.mu().f2, Poly::from_i64s(g7, &[3]));
        }
        assert!(minimal_solution_normalized(&Seq::from_i64s(DomainSpec::INT, &[1]).unwrap())
            .is_err());
    }

    #[test]
    fn massey_first_jump() {
        for spec in [DomainSpec::INT, DomainSpec::gfp(5).unwrap()] {
            let s = Seq::from_i64s(spec, &[0, 0, 3]).unwrap();
            let mut st = solver_init_massey(spec);
            for t in s.terms() {
                st.step(t.clone()).unwrap();
            }
            let want = &Poly::monomial(Elem::one(spec), 3) - &Poly::from_i64s(spec, &[3]);
            assert_eq!(st.mu().f1, want);
            assert_eq!(st.mu().f2, Poly::from_i64s(spec, &[3]));
            st.check_invariants().unwrap();
        }
        let st = minimal_solution_with(
            &gf2(&[0, 0]),
            SolverOptions { massey_init: true, ..SolverOptions::default() },
        )
        .unwrap();
        assert_eq!(st.mu().f1, Poly::one(DomainSpec::GF2));
    }

    #[test]
    fn gf2_normalized_matches_plain() {
        let s = gf2(&[0, 1, 1, 0, 0, 1, 0, 1]);
        let a = minimal_solution(&s);
        let b = minimal_solution_normalized(&s).unwrap();
        assert_eq!(a.mu(), b.mu());
        assert_eq!(a.mu_prime(), b.mu_prime());
    }

    fn seqs() -> impl Strategy<Value = Seq> {
        let specs = vec![
            DomainSpec::GF2,
            DomainSpec::gfp(3).unwrap(),
            DomainSpec::gf2m(4, 0x13).unwrap(),
            DomainSpec::INT,
            DomainSpec::RAT,
        ];
        (proptest::sample::select(specs), proptest::collection::vec(-5i64..=5, 1..16))
            .prop_map(|(spec, t)| Seq::from_i64s(spec, &t).unwrap())
    }

    fn variants() -> impl Strategy<Value = SolverOptions> {
        (any::<bool>(), any::<bool>()).prop_map(|(normalized, massey_init)| SolverOptions {
            normalized,
            massey_init,
            numerators: true,
        })
    }

    proptest! {
        #[test]
        fn invariants_every_step(s in seqs(), opts in variants()) {
            let opts = if s.spec().is_field() { opts } else { SolverOptions { normalized: false, ..opts } };
            let mut st = SolverState::with_options(s.spec(), opts).unwrap();
            let mut prev_lc = 0usize;
            for (k, t) in s.terms().iter().enumerate() {
                let rec = st.step(t.clone()).unwrap();
                prop_assert!(st.check_invariants().is_ok(), "{:?}", st.check_invariants());
                let n = k + 1;
                if !rec.delta.is_zero() {
                    prop_assert_eq!(st.lc(), prev_lc.max(n - prev_lc));
                } else {
                    prop_assert_eq!(st.lc(), prev_lc);
                }
                prev_lc = st.lc();
                let prefix = s.prefix(n).unwrap();
                prop_assert!(is_annihilator(&st.mu().f1, &prefix).unwrap());
            }
            let n = s.len();
            let lc = st.lc();
            let sigma: usize = st.profile().iter().sum();
            prop_assert_eq!(sigma, lc * (n + 1 - lc));
            prop_assert!(4 * sigma <= (n + 1) * (n + 1));
            prop_assert_eq!(4 * sigma == (n + 1) * (n + 1), n + 1 == 2 * lc);
        }

        #[test]
        fn normalized_degrees_match(s in seqs()) {
            prop_assume!(s.spec().is_field());
            let a = minimal_solution(&s);
            let b = minimal_solution_normalized(&s).unwrap();
            prop_assert_eq!(a.profile(), b.profile());
            prop_assert_eq!(a.mu().monic().unwrap(), b.mu().clone());
        }
    }
}
