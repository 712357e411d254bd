use std::path::PathBuf;
use std::process::{Command, Output};

use lampk::fullshift::LivsicVerdict;
use lampk::kgroups::{PvReport, TraceValue};
use lampk::zchain::Decomposition;
use lampk::{Word, ZChain};
use serde_json::{json, Value};

fn lampk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lampk"))
        .args(args)
        .env_remove("LAMPK_BUDGET_COLS")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = lampk(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_no_floats(&v);
    v
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(
            n.is_i64() || n.is_u64() || !n.to_string().contains(['.', 'e', 'E']),
            "float {n}"
        ),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

fn error_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lampk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn orbits_c2() {
    let v = ok_json(&["orbits", "--group", "C2", "--max-len", "3"]);
    assert_eq!(v["count"], 5);
    assert_eq!(v["words"][3], json!({"entries": {"0": 1, "2": 1}}));
    let table = lampk(&[
        "orbits",
        "--group",
        "C2",
        "--max-len",
        "3",
        "--format",
        "table",
    ]);
    assert_eq!(String::from_utf8(table.stdout).unwrap().lines().count(), 5);
}

#[test]
fn k1_report() {
    let v = ok_json(&["k1", "--group", "S3"]);
    assert_eq!(
        v,
        json!({"K1": "Z", "generator": "[u]", "boundary": "∂1[u] = -[1]"})
    );
}

#[test]
fn k0_basis_sides_agree() {
    let v = ok_json(&["k0-basis", "--group", "S3", "--max-len", "3"]);
    let k = &v["k_groups"];
    assert_eq!(k["topological"]["k0_basis"], k["analytic"]["k0_basis"]);
    assert_eq!(k["topological"]["side"], "topological");
    assert_eq!(k["bijection"].as_array().unwrap().len(), 1 + 2 + 4 + 12);
}

#[test]
fn traces() {
    let v = ok_json(&["trace-image", "--group", "C2", "--level", "3"]);
    assert_eq!(v, json!({"num": 1, "den": 8}));
    let v = ok_json(&["trace", "--group", "C2", "--word", r#"{"0":1,"3":1}"#]);
    assert_eq!(
        serde_json::from_value::<TraceValue>(v).unwrap(),
        TraceValue::new(1, 4)
    );
    let v = ok_json(&[
        "trace",
        "--group",
        "S3",
        "--word",
        r#"{"entries":{"0":2,"1":1}}"#,
    ]);
    assert_eq!(v, json!({"num": 1, "den": 18}));
    let out = lampk(&["trace", "--group", "C2", "--word", r#"{"0":5}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "irrep-out-of-range");
}

#[test]
fn claim_check_and_budget() {
    let v = ok_json(&["claim-check", "--group", "S3", "--levels", "3"]);
    assert_eq!(v["size"], 39);
    assert_eq!(v["holds"], true);
    assert_eq!(v["det"].as_i64().unwrap().abs(), 1);
    assert!(v["elapsed_ms"].is_u64());

    let out = Command::new(env!("CARGO_BIN_EXE_lampk"))
        .args(["claim-check", "--group", "S3", "--levels", "3"])
        .env("LAMPK_BUDGET_COLS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "budget");
}

#[test]
fn fingerprint_and_classify() {
    let v = ok_json(&["fingerprint", "--group", "Q8"]);
    assert_eq!(
        v["fingerprint"],
        json!({"order": 8, "dims": [1, 1, 1, 1, 2], "abelian_order": 4})
    );
    let v = ok_json(&[
        "fingerprint",
        "--group",
        r#"{"name": "mine", "order": 6, "dims": [1, 2, 1]}"#,
    ]);
    assert_eq!(v["fingerprint"]["dims"], json!([1, 1, 2]));
    for (a, b, d) in [
        ("C4", "klein4", "iso"),
        ("C6", "S3", "not-iso"),
        ("S3", "D4", "undecided"),
    ] {
        assert_eq!(
            ok_json(&["classify", "--group", a, "--other", b])["decision"],
            d
        );
    }
}

#[test]
fn decompose_round_trips() {
    let f = temp_file(
        "f.json",
        r#"[{"word":{"entries":{"2":1}},"coeff":1},{"word":{"entries":{"-1":1,"0":1}},"coeff":-3}]"#,
    );
    let v = ok_json(&["decompose", "--group", "C2", "--fn", f.to_str().unwrap()]);
    let d: Decomposition = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&d).unwrap(), v);
    let input: ZChain = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(&d.witness.coboundary() + &d.canonical, input);
    assert_eq!(d.canonical.coeff(&Word::single(0, 1)), 1.into());
}

#[test]
fn livsic_verdicts() {
    let f = temp_file("one.json", r#"[{"word":{"entries":{}},"coeff":1}]"#);
    let v = ok_json(&[
        "livsic",
        "--group",
        "C3",
        "--fn",
        f.to_str().unwrap(),
        "--max-period",
        "6",
    ]);
    let verdict: LivsicVerdict = serde_json::from_value(v).unwrap();
    assert!(!verdict.is_coboundary_exact && !verdict.periodic_sums_vanish_up_to_p);
    assert_eq!(verdict.violating_orbit.unwrap().orbit.pattern(), &[0]);

    let out = lampk(&[
        "livsic",
        "--group",
        "S3",
        "--fn",
        f.to_str().unwrap(),
        "--max-period",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = error_json(&out);
    assert_eq!(err["error"], "non-abelian");
    assert!(err["message"].as_str().unwrap().contains("abelian"));
}

#[test]
fn cylinder_expand() {
    let v = ok_json(&[
        "cylinder-expand",
        "--group",
        "C2",
        "--spec",
        r#"{"0":0,"1":1}"#,
    ]);
    let chain: ZChain = serde_json::from_value(v).unwrap();
    let expected =
        &ZChain::word(Word::single(1, 1)) - &ZChain::word(Word::from_entries([(0, 1), (1, 1)]));
    assert_eq!(chain, expected);
}

#[test]
fn pv_check_is_seeded() {
    let args = [
        "pv-check",
        "--group",
        "C2",
        "--samples",
        "200",
        "--window",
        "3",
        "--seed",
        "9",
    ];
    let a = lampk(&args);
    let b = lampk(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: PvReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!((report.seed, report.samples), (9, 200));
    assert!(report.counterexamples.is_empty());
}

#[test]
fn usage_and_domain_errors() {
    let out = lampk(&["orbits", "--group", "{not json", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["error"], "usage");
    assert_eq!(lampk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lampk(&["orbits", "--group", "C2"]).status.code(), Some(2));

    let out = lampk(&["orbits", "--group", "M11", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "unknown-group");

    let out = lampk(&["fingerprint", "--group", r#"{"order": 6, "dims": [1, 2]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "dimension-count");

    let out = lampk(&["orbits", "--group", "C2", "--max-len", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selfcheck_budget_and_determinism() {
    let out = lampk(&["selfcheck", "--budget-ms", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|o| o["status"] == "skipped"));

    let a = lampk(&["selfcheck", "--seed", "5"]);
    let b = lampk(&["selfcheck", "--seed", "5"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
}
