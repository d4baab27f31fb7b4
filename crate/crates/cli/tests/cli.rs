use std::process::{Command, Output};

use qpp_cli::{Outcome, Report};
use serde_json::Value;

fn qpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpp"))
        .args(args)
        .env_remove("QPP_BUDGET_NODES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, Value, i32) {
    let out = qpp(&[args, &["--json"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let value: Value = serde_json::from_str(&text).unwrap();
    (report, value, out.status.code().unwrap())
}

fn body(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing_ms");
    v.to_string()
}

#[test]
fn check_examples() {
    let (r, _, code) = json(&["check", "5504", "21", "86"]);
    assert_eq!(code, 0);
    let Outcome::Check(c) = r.result else { panic!() };
    assert!(c.valid && c.irreducible == Some(true));
    assert!(c.inverse_degree.unwrap() >= 4);

    let (r, _, _) = json(&["check", "256", "2", "32"]);
    let Outcome::Check(c) = r.result else { panic!() };
    assert!(!c.valid);

    let (r, _, _) = json(&["check", "40", "3", "10"]);
    let Outcome::Check(c) = r.result else { panic!() };
    assert!(c.valid);
    assert_eq!(c.qc_period, Some(2));
}

#[test]
fn inverse_verification() {
    let (r, _, _) = json(&["inverse", "2048", "21", "128", "--verify", "1853,1408"]);
    let Outcome::Inverse(inv) = r.result else { panic!() };
    assert_eq!((inv.degree, inv.verified), (2, Some(true)));
    let (r, _, _) = json(&["inverse", "2048", "21", "128", "--verify", "1853,1409"]);
    let Outcome::Inverse(inv) = r.result else { panic!() };
    assert_eq!(inv.verified, Some(false));
}

#[test]
fn bounds_example() {
    let (r, _, _) = json(&["bounds", "5504", "--nu", "3", "--class", "quadratic"]);
    let Outcome::Bounds(b) = r.result else { panic!() };
    assert_eq!(b.combined_bound, Some(50));
}

#[test]
fn dmin_example_and_reproducibility() {
    let args = ["dmin", "48", "7", "12", "--mode", "dual"];
    let (r, first, code) = json(&args);
    assert_eq!(code, 0);
    let Outcome::Dmin(d) = &r.result else { panic!() };
    let res = d.result.as_ref().unwrap();
    assert_eq!((res.dmin, res.multiplicity, res.exact), (Some(17), 16, true));

    let (_, second, _) = json(&args);
    assert_eq!(body(first.clone()), body(second));

    // Lossless round trip through the typed report.
    let again: Value = serde_json::to_value(&r).unwrap();
    assert_eq!(again, first);
}

#[test]
fn budget_exhaustion_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_qpp"))
        .args(["dmin", "48", "7", "12", "--json"])
        .env("QPP_BUDGET_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    let Outcome::Dmin(d) = r.result else { panic!() };
    assert!(d.budget_exhausted);
    assert_eq!(d.budget_nodes, Some(10));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qpp(&["check", "40"]).status.code(), Some(2));
    assert_eq!(qpp(&["dmin", "256", "2", "32"]).status.code(), Some(2));
    assert_eq!(qpp(&["bounds", "40", "--class", "bogus"]).status.code(), Some(2));
}

#[test]
fn regress_short_rows() {
    let (r, _, code) = json(&["regress", "--max-n", "64"]);
    assert_eq!(code, 0);
    let Outcome::Regress(rep) = r.result else { panic!() };
    assert_eq!(rep.rows.len(), 4);
    assert_eq!(rep.failed(), 0);

    // A cap below every distance turns every row into a mismatch.
    assert_eq!(qpp(&["regress", "--max-n", "48", "--cap", "12"]).status.code(), Some(4));
}

#[test]
fn lte_table_dump_and_csv() {
    let out = qpp(&["lte-table", "--dump"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), qpp_core::dataset::raw_table());

    let out = qpp(&["lte-table", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,f1,f2,dmin,multiplicity"));
    assert_eq!(lines.next(), Some("40,3,10,17,11"));
    assert_eq!(lines.count(), 187);
}

#[test]
fn search_csv_columns() {
    let out = qpp(&["search", "40", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,f1,f2,dmin,multiplicity,exact,bound"));
    assert_eq!(lines.next(), Some("40,13,10,18,20,true,36"));
    assert!(text.lines().any(|l| l.starts_with("40,3,10,17,")));
}

#[test]
fn every_report_round_trips() {
    for args in [
        &["check", "40", "3", "10"][..],
        &["inverse", "5504", "21", "1118"],
        &["bounds", "6144", "--class", "cubic"],
        &["dmin", "40", "3", "10", "--estimate"],
        &["search", "40", "--max-exact", "2"],
        &["regress", "--max-n", "40"],
        &["lte-table"],
    ] {
        let (report, value, _) = json(args);
        assert_eq!(serde_json::to_value(&report).unwrap(), value, "{args:?}");
    }
}
