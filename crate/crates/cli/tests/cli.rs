use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn tencode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tencode"))
        .args(args)
        .env_remove("TENCODE_BUDGET")
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn params_of_the_closure_example() {
    let out = tencode(&["params", fixture("closure.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], "tencode/1");
    assert_eq!(v["k"], 3);
    assert_eq!(v["closure_dims"], serde_json::json!([2, 3, 4]));
    assert_eq!(v["d"], 2);
    assert_eq!(v["trk"], 6);
}

#[test]
fn closure_type_weights() {
    let f = fixture("closure.json");
    let v = json_of(&tencode(&[
        "weights",
        f.to_str().unwrap(),
        "--family",
        "cl",
    ]));
    assert_eq!(v["profile"], serde_json::json!([4, 18, 24]));
}

#[test]
fn dual_weights_of_gabidulin_c() {
    let f = fixture("gabidulin_c.json");
    let v = json_of(&tencode(&[
        "weights",
        f.to_str().unwrap(),
        "--family",
        "cl",
        "--dual",
    ]));
    assert_eq!(v["profile"], serde_json::json!([4, 6, 7, 8]));
}

#[test]
fn reports_carry_verification_fields() {
    let f = fixture("gabidulin_c.json");
    for cmd in ["moments", "macwilliams", "tbmd"] {
        let v = json_of(&tencode(&[cmd, f.to_str().unwrap(), "--family", "cl"]));
        assert_eq!(v["verified"], true, "{cmd}");
        assert!(v["first_counterexample"].is_null(), "{cmd}");
    }
}

#[test]
fn verify_suite_passes() {
    let out = tencode(&["verify-suite"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(json_of(&out)["verified"], true);
}

#[test]
fn verify_suite_reads_a_fixture_directory() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let out = tencode(&[
        "verify-suite",
        "--fixtures",
        dir.path().to_str().unwrap(),
        "--only",
        "closure",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // a wrong fixture makes the suite fail with exit 1
    let text = std::fs::read_to_string(dir.path().join("matrix_m.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let mut v = v;
    v["basis"] = serde_json::json!([{"matrix": "1 1 1 / 1 1 1 / 1 1 1"}]);
    std::fs::write(dir.path().join("matrix_m.json"), v.to_string()).unwrap();
    let out = tencode(&[
        "verify-suite",
        "--fixtures",
        dir.path().to_str().unwrap(),
        "--only",
        "incomparable-weights",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verified"], false);
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"schema\": \"tencode/1\",\n  oops\n}").unwrap();
    let out = tencode(&["params", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"]["code"], "malformed_json");
    assert_eq!(v["error"]["line"], 3);
}

#[test]
fn unknown_family_is_an_input_error() {
    let f = fixture("closure.json");
    let out = tencode(&["weights", f.to_str().unwrap(), "--family", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["code"], "invalid_argument");
}

#[test]
fn perfect_family_has_no_dual() {
    let f = fixture("closure.json");
    let out = tencode(&["weights", f.to_str().unwrap(), "--family", "ps", "--dual"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["code"], "no_dual_family");
}

#[test]
fn exhausted_budget_reports_bounds() {
    let f = fixture("closure.json");
    let out = tencode(&[
        "--budget",
        "5",
        "weights",
        f.to_str().unwrap(),
        "--family",
        "cl",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["complete"], false);
    assert_eq!(v["error"]["code"], "budget_exceeded");
    assert!(!v["bounds"].as_array().unwrap().is_empty());
}

#[test]
fn budget_from_the_environment() {
    let f = fixture("closure.json");
    let out = Command::new(env!("CARGO_BIN_EXE_tencode"))
        .args(["weights", f.to_str().unwrap(), "--family", "cl"])
        .env("TENCODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_tencode"))
        .args(["weights", f.to_str().unwrap(), "--family", "cl"])
        .env("TENCODE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    let f = fixture("gabidulin_d.json");
    let args = ["moments", f.to_str().unwrap(), "--family", "delsarte"];
    let (a, b) = (tencode(&args), tencode(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn roth_over_gf4() {
    let out = tencode(&[
        "roth", "--field", "gf4", "--mu", "2", "--nu", "3", "--sigma", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["label"], "C(2,3,3;2)");
    assert_eq!(v["k"], 2);
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["code"]["dims"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["h"].as_array().unwrap().len(), 3);
}

#[test]
fn roth_output_feeds_back_in() {
    let out = tencode(&["roth", "--field", "2^2", "--mu", "2"]);
    let v = json_of(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roth.json");
    std::fs::write(&path, v["code"].to_string()).unwrap();
    let p = json_of(&tencode(&["params", path.to_str().unwrap()]));
    assert_eq!(p["k"], 2);
    assert_eq!(p["d"], 3);
}

#[test]
fn table_format() {
    let f = fixture("closure.json");
    let out = tencode(&[
        "--format",
        "table",
        "weights",
        f.to_str().unwrap(),
        "--family",
        "cl",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.starts_with("profile") && l.ends_with("4 18 24")),
        "{text}"
    );
}

#[test]
fn table_errors_go_to_stderr() {
    let out = tencode(&["--format", "table", "params", "/nonexistent/code.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid_argument"));
}
