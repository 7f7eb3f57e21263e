use serde_json::Value;

use minseq::cli::{poly_from_json, run};
use minseq::{DomainSpec, Poly};

const SAMPLE: &str = "0 1 1 0 0 1 0 1";

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("minseq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = exec(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn gf2(c: &[i64]) -> Poly {
    Poly::from_i64s(DomainSpec::GF2, c)
}

#[test]
fn solve_sample() {
    let v = json(&["solve", "--field", "gf2", "--terms", SAMPLE]);
    let spec = DomainSpec::GF2;
    // x^4 + x^2 + x and x^2 + x + 1
    assert_eq!(poly_from_json(spec, &v["mu1"]).unwrap(), gf2(&[0, 1, 1, 0, 1]));
    assert_eq!(poly_from_json(spec, &v["mu2"]).unwrap(), gf2(&[1, 1, 1]));
    assert_eq!(poly_from_json(spec, &v["mup1"]).unwrap(), gf2(&[1, 1, 1, 1]));
    assert_eq!(poly_from_json(spec, &v["mup2"]).unwrap(), gf2(&[0, 1]));
    assert_eq!(v["lc"], 4);
    assert_eq!(v["e"], 1);
    assert_eq!(v["profile"], serde_json::json!([0, 2, 2, 2, 3, 3, 4, 4]));
}

#[test]
fn nonvanish_sample_at_zero() {
    let v = json(&["nonvanish", "--field", "gf2", "--terms", SAMPLE, "--at", "0"]);
    assert_eq!(poly_from_json(DomainSpec::GF2, &v["xi1"]).unwrap(), gf2(&[1, 1, 0, 0, 0, 1]));
    assert_eq!(poly_from_json(DomainSpec::GF2, &v["xi2"]).unwrap(), gf2(&[0, 0, 1, 1]));
    assert_eq!(v["lc_at"], 5);
}

#[test]
fn profile_of_single_zero() {
    let v = json(&["profile", "--field", "gf2", "--terms", "0"]);
    assert_eq!(v["profile"], serde_json::json!([0]));
    assert_eq!(v["class"], "Trivial");
}

#[test]
fn emitted_polynomials_reparse() {
    let cases: &[(&str, &str)] = &[
        ("gf2", SAMPLE),
        ("gfp:7", "3 0 5 6 1 2"),
        ("gf2m:4:13", "6 a 3 0 0 4"),
        ("int", "2 -1 3 0 5"),
        ("rat", "1/2 -3/4 2 0 5/3"),
    ];
    for &(field, terms) in cases {
        let spec: DomainSpec = field.parse().unwrap();
        let v = json(&["solve", "--field", field, "--terms", terms]);
        for key in ["mu1", "mu2", "mup1", "mup2"] {
            let p = poly_from_json(spec, &v[key]).unwrap();
            let again = serde_json::to_value(&v[key]).unwrap();
            assert_eq!(poly_from_json(spec, &again).unwrap(), p, "{field} {key}");
        }
    }
}

#[test]
fn verify_passes_on_every_domain() {
    for (field, terms) in [("gf2", SAMPLE), ("gf2m:4:13", "6 a 3 0 0 4"), ("int", "1 -2 3 5 0 4"), ("rat", "1/2 3 -1/3")] {
        let v = json(&["verify", "--field", field, "--terms", terms]);
        assert_eq!(v["ok"], true, "{field}: {v}");
    }
}

#[test]
fn count_and_enumerate_agree() {
    let c = json(&["count", "--terms", SAMPLE, "--degree", "5"]);
    let e = json(&["enumerate", "--terms", SAMPLE, "--degree", "5"]);
    assert_eq!(c["count"], 4);
    assert_eq!(e["count"], 4);
    assert_eq!(e["solutions"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_matches_solver() {
    let o = json(&["oracle", "profile", "--terms", SAMPLE]);
    let s = json(&["profile", "--terms", SAMPLE]);
    assert_eq!(o["lc"], s["lc"]);
    assert_eq!(o["profile"], s["profile"]);
}

#[test]
fn exit_codes() {
    assert_eq!(exec(&["--help"]).0, 0);
    assert_eq!(exec(&["profile", "--terms", "0 1"]).0, 0);
    // unknown subcommand, bad field, bad literal, two input sources
    assert_eq!(exec(&["frobnicate"]).0, 2);
    let (code, _, err) = exec(&["profile", "--field", "gf4", "--terms", "0 1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(exec(&["profile", "--field", "gf2", "--terms", "0 2x"]).0, 2);
    assert_eq!(exec(&["profile", "--terms", "1", "--file", "x.txt"]).0, 2);
    // enumeration needs a field
    assert_eq!(exec(&["enumerate", "--field", "int", "--terms", "1 2", "--degree", "2"]).0, 2);
}
