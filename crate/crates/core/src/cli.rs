//! Command-line front end. Every command prints one JSON document.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when an internal
//! invariant check fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cf::{
    cf_expand_prefix, cf_expand_rational, lc_from_cf, CellEnd, CfExpansion, RationalFn,
};
use crate::decomp::{
    count_solutions, decompose, enumerate_solutions, minimal_system_of, pairing,
};
use crate::domains::{DomainSpec, Elem};
use crate::error::{Error, Result};
use crate::genfn::{bracket_numerator, is_annihilator, residual_valuation, SolutionPair, Seq};
use crate::nonvanish::{nonvanishing_by_extension, nonvanishing_solution};
use crate::oracle::{brute_count, brute_lc, brute_min_set_at, budget_from_env};
use crate::poly::Poly;
use crate::solver::{SeqClass, SolverOptions, SolverState};

#[derive(Parser, Debug)]
#[command(name = "minseq", version, about = "Minimal solutions and linear complexity of finite sequences")]
struct Cli {
    #[command(flatten)]
    input: Input,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Coefficient domain: gf2, gfp:<p>, gf2m:<m>:<hex modulus>, int, rat
    #[arg(long, global = true, default_value = "gf2")]
    field: String,
    /// Sequence terms s_0 s_-1 ... separated by spaces or commas
    #[arg(long, global = true, conflicts_with = "file")]
    terms: Option<String>,
    /// File holding the sequence terms
    #[arg(long, global = true)]
    file: Option<std::path::PathBuf>,
    /// Render polynomials as text and indent the output
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Linear complexity profile and classification
    Profile,
    /// Minimal solution, auxiliary pair and nabla
    Solve {
        /// Keep mu1 monic (fields only)
        #[arg(long)]
        normalize: bool,
        /// Start from mu' = (1, -1)
        #[arg(long)]
        massey: bool,
        /// Skip the numerator updates
        #[arg(long)]
        no_numerators: bool,
    },
    /// Continued fraction of x*num/den, or of the sequence prefix
    Cf {
        /// Numerator coefficients, low to high
        #[arg(long, requires = "den")]
        num: Option<String>,
        /// Denominator coefficients, low to high
        #[arg(long, requires = "num")]
        den: Option<String>,
        /// Stop after this many quotients
        #[arg(long, default_value_t = 64)]
        max_i: usize,
        /// Number of rows in the LC table (rational mode)
        #[arg(long)]
        table_len: Option<u64>,
    },
    /// Decompose the solution with the given denominator
    Decompose {
        /// Denominator coefficients, low to high
        #[arg(long)]
        f1: String,
    },
    /// Count solutions with denominator degree d
    Count {
        #[arg(long)]
        degree: i64,
    },
    /// List solutions with denominator degree d
    Enumerate {
        #[arg(long)]
        degree: i64,
    },
    /// Least-degree solution whose denominator is nonzero at a point
    Nonvanish {
        /// Point a
        #[arg(long)]
        at: String,
        /// Also build it by extending the sequence by one term
        #[arg(long)]
        extend: bool,
    },
    /// Check all invariants on the input
    Verify,
    /// Brute-force counterparts of profile, count and nonvanish
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Least degree annihilator and per-degree counts by enumeration
    Profile,
    /// Count annihilators of degree d by enumeration
    Count {
        #[arg(long)]
        degree: usize,
    },
    /// Least degree of an annihilator nonzero at a, by enumeration
    Nonvanish {
        #[arg(long)]
        at: String,
    },
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let text = if cli.input.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .expect("serialisable");
            let _ = writeln!(out, "{text}");
            if cli_failed(&v) {
                3
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Invariant(_) => 3,
                _ => 2,
            }
        }
    }
}

fn cli_failed(v: &Value) -> bool {
    v.get("ok") == Some(&Value::Bool(false))
}

struct Fmt {
    pretty: bool,
}

impl Fmt {
    fn poly(&self, p: &Poly) -> Value {
        if self.pretty {
            Value::String(p.pretty())
        } else {
            Value::Array(p.coeffs().iter().map(elem_to_json).collect())
        }
    }

    fn pair(&self, f: &SolutionPair) -> Value {
        json!([self.poly(&f.f1), self.poly(&f.f2)])
    }
}

/// JSON form of an element: a number for prime fields and small integers,
/// otherwise its literal as a string.
pub fn elem_to_json(e: &Elem) -> Value {
    let spec = e.spec();
    if let Some(i) = e.index() {
        if spec.to_string().starts_with("gf2m") {
            return Value::String(e.to_string());
        }
        return json!(i);
    }
    if let Some(v) = e.as_bigint() {
        if let Ok(k) = i64::try_from(v) {
            return json!(k);
        }
    }
    Value::String(e.to_string())
}

pub fn elem_from_json(spec: DomainSpec, v: &Value) -> Result<Elem> {
    match v {
        Value::Number(n) => spec.parse_elem(&n.to_string()),
        Value::String(s) => spec.parse_elem(s),
        _ => Err(Error::InvalidArgument(format!("not an element: {v}"))),
    }
}

/// Reads a low-to-high coefficient list.
pub fn poly_from_json(spec: DomainSpec, v: &Value) -> Result<Poly> {
    let items = v.as_array().ok_or_else(|| Error::InvalidArgument(format!("not a list: {v}")))?;
    let coeffs = items.iter().map(|c| elem_from_json(spec, c)).collect::<Result<Vec<_>>>()?;
    Poly::from_coeffs(spec, coeffs)
}

/// Parses `"[1, 0, 1]"` or `"1 0 1"`, low-to-high.
pub fn parse_poly(spec: DomainSpec, text: &str) -> Result<Poly> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    let coeffs = body
        .split(|c: char| c.is_whitespace() || c == ',')
        .map(|t| t.trim_matches('"'))
        .filter(|t| !t.is_empty())
        .map(|t| spec.parse_elem(t))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_coeffs(spec, coeffs)
}

fn read_seq(input: &Input, spec: DomainSpec) -> Result<Seq> {
    let text = match (&input.terms, &input.file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("--file {}: {e}", path.display())))?,
        _ => return Err(Error::InvalidArgument("exactly one of --terms or --file is required".into())),
    };
    Seq::parse(spec, &text)
}

fn class_json(c: SeqClass) -> (Value, Value) {
    (json!(c.name()), c.n_prime().map_or(Value::Null, |n| json!(n)))
}

fn execute(cli: &Cli) -> Result<Value> {
    let spec: DomainSpec = cli.input.field.parse()?;
    let fmt = Fmt { pretty: cli.input.pretty };
    let budget = budget_from_env();
    if let Command::Cf { num: Some(num), den: Some(den), max_i, table_len } = &cli.command {
        let s = RationalFn::new(parse_poly(spec, num)?, parse_poly(spec, den)?)?;
        let exp = cf_expand_rational(&s, *max_i)?;
        let rows = table_len.unwrap_or_else(|| default_table_len(&exp));
        return Ok(cf_json(&fmt, &exp, "rational", rows));
    }
    let s = read_seq(&cli.input, spec)?;
    match &cli.command {
        Command::Profile => {
            let st = run_solver(&s, SolverOptions { numerators: false, ..Default::default() })?;
            let (class, n_prime) = class_json(SeqClass::from_profile(st.profile()));
            Ok(json!({
                "n": s.len(),
                "lc": st.lc(),
                "e": st.e(),
                "profile": st.profile(),
                "sigma": st.profile().iter().sum::<usize>(),
                "class": class,
                "n_prime": n_prime,
            }))
        }
        Command::Solve { normalize, massey, no_numerators } => {
            let opts = SolverOptions {
                normalized: *normalize,
                massey_init: *massey,
                numerators: !no_numerators,
            };
            let st = run_solver(&s, opts)?;
            st.check_invariants()?;
            let (class, n_prime) = class_json(SeqClass::from_profile(st.profile()));
            Ok(json!({
                "n": s.len(),
                "lc": st.lc(),
                "e": st.e(),
                "nabla": elem_to_json(st.nabla()),
                "mu1": fmt.poly(&st.mu().f1),
                "mu2": fmt.poly(&st.mu().f2),
                "mup1": fmt.poly(&st.mu_prime().f1),
                "mup2": fmt.poly(&st.mu_prime().f2),
                "profile": st.profile(),
                "mul_count": st.mul_count(),
                "class": class,
                "n_prime": n_prime,
            }))
        }
        Command::Cf { .. } => {
            let exp = cf_expand_prefix(&s)?;
            Ok(cf_json(&fmt, &exp, "prefix", s.len() as u64))
        }
        Command::Decompose { f1 } => {
            let f1 = parse_poly(spec, f1)?;
            if f1.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let f = SolutionPair::for_sequence(f1, &s);
            let sys = minimal_system_of(&s)?;
            let d = decompose(&f, &s, &sys)?;
            if !d.reconstruction_ok || d.numerator_ok == Some(false) || !d.bounds_ok {
                return Err(Error::Invariant("decomposition identities fail".into()));
            }
            Ok(json!({
                "f2": fmt.poly(&f.f2),
                "m": fmt.poly(&d.m),
                "mp": fmt.poly(&d.m_p),
                "nabla": elem_to_json(&sys.nabla),
                "reconstruction_ok": d.reconstruction_ok,
                "numerator_ok": d.numerator_ok,
                "bounds_ok": d.bounds_ok,
            }))
        }
        Command::Count { degree } => {
            let c = count_solutions(&s, *degree)?;
            Ok(json!({ "degree": degree, "count": count_json(&c) }))
        }
        Command::Enumerate { degree } => {
            let sols = enumerate_solutions(&s, *degree, budget)?;
            let list: Vec<Value> = sols
                .iter()
                .map(|e| {
                    json!({
                        "f1": fmt.poly(&e.f.f1),
                        "f2": fmt.poly(&e.f.f2),
                        "phi_p": fmt.poly(&e.phi_p),
                        "phi": fmt.poly(&e.phi),
                    })
                })
                .collect();
            Ok(json!({ "degree": degree, "count": list.len(), "solutions": list }))
        }
        Command::Nonvanish { at, extend } => {
            let a = spec.parse_elem(at)?;
            let r = nonvanishing_solution(&s, &a)?;
            if !r.xi.is_solution_for(&s) || r.xi.f1.eval(&a)?.is_zero() {
                return Err(Error::Invariant("xi is not a non-vanishing solution".into()));
            }
            let mut v = json!({
                "xi1": fmt.poly(&r.xi.f1),
                "xi2": fmt.poly(&r.xi.f2),
                "lc_at": r.lc_at,
                "M": r.m,
                "used_extension": r.used_extension,
            });
            if *extend {
                let ext = match nonvanishing_by_extension(&s, &a) {
                    Ok(x) => json!({
                        "term": elem_to_json(&x.term),
                        "nu1": fmt.poly(&x.nu.f1),
                        "nu2": fmt.poly(&x.nu.f2),
                    }),
                    Err(e) => json!({ "unavailable": e.to_string() }),
                };
                v["extension"] = ext;
            }
            Ok(v)
        }
        Command::Verify => {
            let checks = verify_sequence(&s);
            let ok = checks.iter().all(|(_, b)| *b);
            let list: Vec<Value> =
                checks.iter().map(|(name, b)| json!({ "name": name, "ok": b })).collect();
            Ok(json!({ "checks": list, "ok": ok }))
        }
        Command::Oracle { which } => match which {
            OracleCommand::Profile => {
                let r = brute_lc(&s, budget)?;
                let profile = (1..=s.len())
                    .map(|k| brute_lc(&s.prefix(k)?, budget).map(|r| r.lc))
                    .collect::<Result<Vec<_>>>()?;
                let counts: Map<String, Value> =
                    r.per_degree_counts.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
                Ok(json!({
                    "lc": r.lc,
                    "profile": profile,
                    "witnesses": r.witnesses.iter().map(|p| fmt.poly(p)).collect::<Vec<_>>(),
                    "per_degree_counts": counts,
                }))
            }
            OracleCommand::Count { degree } => {
                let c = brute_count(&s, *degree, budget)?;
                Ok(json!({ "degree": degree, "count": c }))
            }
            OracleCommand::Nonvanish { at } => {
                let a = spec.parse_elem(at)?;
                let set = brute_min_set_at(&s, &a, budget)?;
                Ok(json!({
                    "lc_at": set[0].deg(),
                    "min_set": set.iter().map(|p| fmt.poly(p)).collect::<Vec<_>>(),
                }))
            }
        },
    }
}

fn count_json(c: &num_bigint::BigUint) -> Value {
    match u64::try_from(c) {
        Ok(k) => json!(k),
        Err(_) => Value::String(c.to_string()),
    }
}

fn run_solver(s: &Seq, opts: SolverOptions) -> Result<SolverState> {
    crate::solver::minimal_solution_with(s, opts)
}

fn default_table_len(exp: &CfExpansion) -> u64 {
    match exp.end {
        CellEnd::At(e) => e - 1,
        _ => {
            let last = *exp.partition.last().unwrap();
            let deg = *exp.degrees.last().unwrap() as u64;
            last.max(2 * deg).max(1)
        }
    }
}

fn cf_json(fmt: &Fmt, exp: &CfExpansion, mode: &str, rows: u64) -> Value {
    let end = match exp.end {
        CellEnd::Infinite => Value::Null,
        CellEnd::At(e) => json!({ "at": e }),
        CellEnd::Beyond(b) => json!({ "beyond": b }),
    };
    let table: Vec<Value> = (1..=rows)
        .filter_map(|n| {
            let cell = exp.cell_of(n).ok()?;
            Some(json!({ "n": n, "cell": cell, "lc": lc_from_cf(exp, n).ok()? }))
        })
        .collect();
    json!({
        "mode": mode,
        "quotients": exp.quotients.iter().map(|a| fmt.poly(a)).collect::<Vec<_>>(),
        "convergents": exp.convergents.iter().map(|q| fmt.pair(q)).collect::<Vec<_>>(),
        "degrees": exp.degrees,
        "partition": exp.partition,
        "end": end,
        "terminated": exp.terminated,
        "precision_exhausted": exp.precision_exhausted,
        "lc_table": table,
    })
}

/// Runs every applicable identity on `s`; returns `(name, holds)` pairs.
pub fn verify_sequence(s: &Seq) -> Vec<(String, bool)> {
    let spec = s.spec();
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut st = SolverState::new(spec);
    let (mut nabla_ok, mut bracket_ok, mut jump_ok, mut e_ok) = (true, true, true, true);
    for (k, t) in s.terms().iter().enumerate() {
        let before = st.lc();
        let rec = match st.step(t.clone()) {
            Ok(r) => r,
            Err(_) => return vec![("step".into(), false)],
        };
        let n = k + 1;
        let pre = s.prefix(n).unwrap();
        nabla_ok &= pairing(st.mu(), st.mu_prime()) == Poly::constant(st.nabla().clone())
            && !st.nabla().is_zero();
        bracket_ok &= st.mu().f2 == bracket_numerator(&st.mu().f1, &pre)
            && is_annihilator(&st.mu().f1, &pre).unwrap_or(false)
            && residual_valuation(&st.mu().f1, &st.mu().f2, &pre) <= st.mu().f1.degree() - n as i64;
        if !rec.delta.is_zero() {
            jump_ok &= st.lc() == before.max(n - before);
        }
        e_ok &= st.e() == n as i64 + 1 - 2 * st.lc() as i64;
    }
    let n = s.len();
    let lc = st.lc();
    let sigma: usize = st.profile().iter().sum();
    checks.push(("nabla_identity".into(), nabla_ok));
    checks.push(("bracket_numerator".into(), bracket_ok));
    checks.push(("jump_rule".into(), jump_ok));
    checks.push(("e_invariant".into(), e_ok));
    checks.push((
        "sigma_identity".into(),
        sigma == lc * (n + 1 - lc) && 4 * sigma <= (n + 1) * (n + 1),
    ));

    if let Ok(sys) = minimal_system_of(s) {
        let ok = decompose(&sys.lambda, s, &sys)
            .map(|d| d.reconstruction_ok && d.bounds_ok && d.m.is_zero())
            .unwrap_or(false);
        checks.push(("decomposition_of_mu".into(), ok));
    }
    if spec.is_field() {
        let normalized = crate::solver::minimal_solution_normalized(s);
        let ok = normalized.as_ref().is_ok_and(|b| {
            b.check_invariants().is_ok() && b.profile() == st.profile()
        });
        checks.push(("normalized_variant".into(), ok));
        let ok = cf_expand_prefix(s).is_ok_and(|exp| {
            let det_ok = (1..exp.convergents.len()).all(|i| {
                let d = pairing(&exp.convergents[i], &exp.convergents[i - 1]);
                let want = if i % 2 == 1 { Elem::one(spec) } else { Elem::one(spec).neg() };
                d == Poly::constant(want)
            });
            let lc_ok = (1..=n).all(|k| lc_from_cf(&exp, k as u64).ok() == Some(st.profile()[k - 1]));
            det_ok && lc_ok
        });
        checks.push(("cf_determinant_and_profile".into(), ok));
    }
    if spec.is_finite() {
        if let Ok(r) = brute_lc(s, budget_from_env()) {
            checks.push(("oracle_lc".into(), r.lc == lc));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("minseq").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parse_poly_forms() {
        let g = DomainSpec::GF2;
        assert_eq!(parse_poly(g, "[0, 1, 1]").unwrap(), Poly::from_i64s(g, &[0, 1, 1]));
        assert_eq!(parse_poly(g, "0 1 1").unwrap(), Poly::from_i64s(g, &[0, 1, 1]));
        assert!(parse_poly(g, "[]").unwrap().is_zero());
    }

    #[test]
    fn bad_field_is_validation_error() {
        let (code, _, err) = call(&["profile", "--field", "gfp:9", "--terms", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("not prime"));
        let (code, _, _) = call(&["profile", "--field", "gf2"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn json_round_trip_elements() {
        for (spec, lit) in [("gf2", "1"), ("gfp:7", "5"), ("gf2m:4:0x13", "0x6"), ("int", "-99999999999999999999"), ("rat", "-2/3")] {
            let spec: DomainSpec = spec.parse().unwrap();
            let e = spec.parse_elem(lit).unwrap();
            assert_eq!(elem_from_json(spec, &elem_to_json(&e)).unwrap(), e);
        }
    }
}
