use std::process::Command;

use serde_json::Value;

fn curveinv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_curveinv"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = curveinv(args);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{}: {}", e, out)),
    )
}

#[test]
fn cusp_from_equation() {
    let (code, v) = json(&["eq-invariants", "y^2 - x^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "curveinv/1");
    assert_eq!(v["command"], "eq-invariants");
    assert_eq!((v["mult"].clone(), v["milnor"].clone()), (2.into(), 2.into()));
    assert_eq!((v["I_f"].clone(), v["V_f"].clone()), (8.into(), 15.into()));
}

#[test]
fn cusp_from_parametrisation() {
    let (code, v) = json(&["param-invariants", "--x", "t^2", "--y", "t^3"]);
    assert_eq!(code, 0);
    for (k, n) in [("I_gamma", 2), ("V_gamma", 3), ("beta", 3), ("lambda", 4)] {
        assert_eq!(v[k], n, "{}", k);
    }
}

#[test]
fn line_pair_is_infinite() {
    let (code, v) = json(&["eq-invariants", "x*y"]);
    assert_eq!(code, 0);
    assert_eq!(v["I_f"], "inf");
    assert_eq!(v["reason"], "line component");
}

#[test]
fn intersection_routes() {
    let (_, a) = json(&["intersect", "y^2 - x^3", "x - y^2"]);
    let (_, b) = json(&["intersect", "x - y^2", "--x", "t^2", "--y", "t^3"]);
    assert_eq!(a["m"], 2);
    assert_eq!(b["m"], 2);
}

#[test]
fn exit_codes() {
    let (code, v) = json(&["eq-invariants", "z^2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "Parse");
    assert_eq!(v["error"]["message"], "unknown variable z at 1:1");
    assert_eq!(curveinv(&["eq-invariants", "2x"]).0, 1);
    assert_eq!(curveinv(&["--bogus", "eq-invariants", "x"]).0, 1);
    assert_eq!(curveinv(&["--format", "csv", "milnor", "x^2 - y^3"]).0, 1);
    let (code, v) = json(&["eq-invariants", "1 + x"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "NotAtOrigin");
    let (code, v) = json(&["evolute", "--x", "t", "--y", "t^3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "EvoluteEscapes");
    let (code, v) = json(&[
        "--trunc",
        "8",
        "--max-trunc",
        "8",
        "param-invariants",
        "--x",
        "t^2",
        "--y",
        "t^21",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "TruncationInsufficient");
}

#[test]
fn evolute_of_parabola() {
    let (code, v) = json(&["evolute", "--x", "t", "--y", "t^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["x"], "-4*t^3");
    assert_eq!(v["y"], "(1/2) + 3*t^2");
}

#[test]
fn sqh_matches_fulton() {
    let (code, v) = json(&["sqh", "x^4 + y^5 + x^2*y^3", "--w1", "5", "--w2", "4"]);
    assert_eq!(code, 0);
    assert_eq!((v["sqh"].clone(), v["fulton"].clone()), (42.into(), 42.into()));
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_with_branches() {
    let (code, v) = json(&["verify", "x^2 - y^3", "--branch", "(t^3, t^2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
}

#[test]
fn mismatched_branch_is_a_math_error() {
    let (code, v) = json(&["verify", "x^2 - y^3", "--branch", "(t^2, t^3)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "BranchMismatch");
}

#[test]
fn table_csv_columns() {
    let (code, out, _) = curveinv(&["--format", "csv", "table", "simple", "--family", "A", "--k-max", "2"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("family,params,I_expected,I_computed,V_expected,V_computed,status")
    );
    assert_eq!(lines.next(), Some("A_{2k},k=1,8,8,15,15,pass"));
    assert!(out.contains("A_{2k},k=2;j=2,15,15,28,29,known-discrepancy"));
}

#[test]
fn text_format_aligns_keys() {
    let (code, out, _) = curveinv(&["--format", "text", "milnor", "x^3 + y^4"]);
    assert_eq!(code, 0);
    assert!(
        out.lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["milnor", "6"]),
        "{}",
        out
    );
}

#[test]
fn catalog_export_round_trips() {
    let (code, v) = json(&["catalog", "--table", "simple", "--k-max", "2"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let f = e["equation"].as_str().unwrap();
        let (c, m) = json(&["milnor", f]);
        assert_eq!(c, 0, "{}", f);
        assert_eq!(m["input"], f, "printed form does not round-trip");
    }
}
