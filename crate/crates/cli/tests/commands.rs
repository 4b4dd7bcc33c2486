use std::process::{Command, Output};

use constacode::export::{self, AmbientRecord, Classification, DualReport};
use constacode::oracle::VerificationReport;

fn constacode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constacode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BINARY_6: &[&str] = &["-p", "2", "-s", "1", "-n", "3", "--alpha", "1", "--beta", "1"];
const TERNARY_3: &[&str] = &["-p", "3", "-s", "1", "-n", "1", "--alpha", "2", "--beta", "1"];

fn with(cmd: &str, params: &[&str], extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd).chain(params.iter().copied()).chain(extra.iter().copied()).map(String::from).collect()
}

fn run(cmd: &str, params: &[&str], extra: &[&str]) -> Output {
    let args = with(cmd, params, extra);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    constacode(&refs)
}

#[test]
fn factor_reports_two_factors() {
    let o = run("factor", BINARY_6, &["--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: AmbientRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.factors.len(), 2);
    assert_eq!(rec.factors[0].f_text, "1 + 1*x");
    assert_eq!(rec.factors[1].f_text, "1 + 1*x + 1*x^2");
    assert!(!rec.irreducible_case);
}

#[test]
fn codes_json_round_trips_and_is_deterministic() {
    let a = run("codes", BINARY_6, &["--output", "json"]);
    let b = run("codes", BINARY_6, &["--output", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let c: Classification = serde_json::from_str(&text).unwrap();
    assert_eq!(c.num_codes, 25);
    assert_eq!(export::to_json(&c), text);
}

#[test]
fn codes_csv_columns() {
    let o = run("codes", TERNARY_3, &["--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "exponents,log_card,generator,dual_exponents,self_dual");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[4], "(3),3,(0 + u*1),(3),true");
}

#[test]
fn dual_of_single_code() {
    let o = run("dual", BINARY_6, &["--exponents", "1,3", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: DualReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.pairs.len(), 1);
    assert_eq!(rep.pairs[0].dual_exponents, vec![3, 1]);
}

#[test]
fn verify_succeeds() {
    let o = run("verify", TERNARY_3, &["--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.passed);
    assert_eq!(rep.oracle_ideals, 7);
    let text = stdout(&o);
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", text);
}

#[test]
fn bad_input_exits_with_2() {
    let cases: &[&[&str]] = &[
        &["codes", "-p", "4", "-s", "1", "-n", "1", "--alpha", "1", "--beta", "1"],
        &["codes", "-p", "2", "-s", "1", "-n", "2", "--alpha", "1", "--beta", "1"],
        &["codes", "-p", "3", "-s", "1", "-n", "1", "--alpha", "0", "--beta", "1"],
        &["codes", "-p", "3", "-s", "1", "-n", "1", "--alpha", "1", "--beta", "0"],
        &["codes", "-p", "3", "-s", "0", "-n", "1", "--alpha", "1", "--beta", "1"],
        &["codes", "-p", "3", "-s", "1", "-n", "1", "--alpha", "3", "--beta", "1"],
        &["codes", "-p", "3", "-m", "2", "-s", "1", "-n", "1", "--alpha", "1", "--beta", "1", "--modulus", "1,0,0"],
        &["codes", "-p", "3", "-s", "1", "-n", "1", "--alpha", "x", "--beta", "1"],
        &["factor", "-p", "3", "-s", "1", "-n", "1", "--alpha", "1", "--beta", "1", "--output", "csv"],
        &["dual", "-p", "3", "-s", "1", "-n", "1", "--alpha", "1", "--beta", "1", "--exponents", "7"],
        &["codes", "-p", "3"],
    ];
    for args in cases {
        let o = constacode(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn resource_cap_exits_with_3() {
    let o = run("verify", BINARY_6, &["--cap", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run("codes", BINARY_6, &["--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn self_duality_marked_undecided_beyond_cap() {
    let o = run("codes", BINARY_6, &["--output", "csv", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",undecided(too large)")));
}
