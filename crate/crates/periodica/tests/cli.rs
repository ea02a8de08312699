use std::process::Command;

use periodica::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("periodica").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn catalog_show_gives_quiver_json() {
    let (code, v) = json(&["catalog", "show", "A2"]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "A2");
    assert_eq!(v["arrows"], serde_json::json!([[1, 2, 1]]));
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [-1, 0]]));
    let (code, list) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert_eq!(list.as_array().unwrap().len(), periodica_core::catalog::names().len());
}

#[test]
fn catalog_dot_export() {
    let (code, out, _) = call(&["catalog", "show", "delPezzo3", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph \"delPezzo3\""));
    assert!(out.contains("[label=\"2\"]"));
}

#[test]
fn check_period_exit_codes() {
    let (code, v) = json(&["check-period", "--catalog", "A2", "--sequence", "(1,2)^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed_periodic"], true);
    let (code, v) = json(&["check-period", "--catalog", "A2", "--sequence", "(1,2)^4"]);
    assert_eq!(code, 1);
    assert_eq!(v["seed_periodic"], false);
    assert_eq!(v["witness"]["kind"], "seed");
    let (code, v) = json(&["check-period", "--catalog", "A2", "--sequence", "(1,2)^5", "--method", "symbolic"]);
    assert_eq!((code, v["method"].as_str()), (0, Some("symbolic")));
}

#[test]
fn check_period_with_relabelings_and_claims() {
    let (code, v) = json(&["check-period", "--catalog", "A3", "--sequence", "(1,3|2)^3", "--nu", "omega"]);
    assert_eq!(code, 0);
    assert_eq!(v["nu"], serde_json::json!([3, 2, 1]));
    let (code, _) = json(&["check-period", "--catalog", "A3", "--sequence", "(1,3|2)^3"]);
    assert_eq!(code, 1);
    let (code, v) = json(&["check-period", "--catalog", "A3", "--sequence", "(1,3|2)^3", "--nu", "auto"]);
    assert_eq!((code, v["nu"].clone()), (0, serde_json::json!([3, 2, 1])));
    let (code, v) = json(&["check-period", "--catalog", "A4-level4", "--claim", "i^9"]);
    assert_eq!((code, v["length"].as_u64()), (0, Some(108)));
    let (code, _) = json(&["check-period", "--matrix", "[[0,1],[-1,0]]", "--sequence", "1,2,1,2,1", "--nu", "2,1"]);
    assert_eq!(code, 0);
}

#[test]
fn quiver_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.json");
    std::fs::write(&path, r#"{"n": 3, "arrows": [[1, 2, 1], [3, 2, 1]]}"#).unwrap();
    let (code, v) = json(&["check-period", "--quiver", path.to_str().unwrap(), "--sequence", "(1,3|2)^6"]);
    assert_eq!((code, v["seed_periodic"].clone()), (0, Value::Bool(true)));
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        vec!["check-period", "--catalog", "A2", "--sequence", "(1,2"],
        vec!["check-period", "--catalog", "A2", "--sequence", "3"],
        vec!["check-period", "--catalog", "nope", "--sequence", "1"],
        vec!["check-period", "--matrix", "[[0,1],[1,0]]", "--sequence", "1"],
        vec!["check-period", "--sequence", "1"],
        vec!["frobnicate"],
        vec!["catalog", "show", "A2", "--format", "latex"],
        vec!["gen-ysystem", "--catalog", "A2", "--sequence", "1"],
        vec!["mutate", "--catalog", "A2", "--sequence", "1", "--tracking", "sometimes"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-period"));
}

#[test]
fn mutate_reports_principal_data() {
    let (code, v) = json(&["mutate", "--catalog", "A2", "--sequence", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["c_vectors"], serde_json::json!([[-1, 0], [1, 1]]));
    assert_eq!(v["f_polynomials"][0], "1 + y1");
    assert_eq!(v["history"], serde_json::json!([1]));
    let (_, v) = json(&["mutate", "--catalog", "B4-level4", "--sequence", "(1,2,3)^2", "--tracking", "off"]);
    assert!(v["f_polynomials"].is_null());
}

#[test]
fn find_period_recovers_the_pentagon() {
    let (code, v) = json(&["find-period", "--catalog", "A2", "--max-len", "10", "--identity-only"]);
    assert_eq!(code, 0);
    let first = &v.as_array().unwrap()[0];
    assert_eq!(first["length"], 10);
}

#[test]
fn systems_in_both_formats() {
    let (code, v) = json(&["gen-tsystem", "--catalog", "A4-level4"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "T");
    assert_eq!(v["duality_holds"], true);
    assert!(!v["relations"].as_array().unwrap().is_empty());
    let (code, out, _) = call(&["gen-ysystem", "--catalog", "A3", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("\\begin{align*}"));
    let (_, v) = json(&["gen-tsystem", "--catalog", "A2", "--sequence", "1|2", "--coefficients"]);
    assert_eq!(v["with_coefficients"], true);
    let (_, v) = json(&["gen-ysystem", "--catalog", "delPezzo3"]);
    assert_eq!(v["nu"], serde_json::json!([3, 4, 5, 6, 1, 2]));
}

#[test]
fn verify_dilog_report() {
    let (code, v) = json(&["verify-dilog", "--catalog", "A2", "--trials", "5"]);
    assert_eq!(code, 0);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["trials"].as_array().unwrap().len(), 5);
    assert_eq!(v["n_plus"].as_i64().unwrap() + v["n_minus"].as_i64().unwrap(), 10);
    let (code, v2) = json(&["verify-dilog", "--catalog", "A2", "--trials", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v, v2);
    let (code, _, err) = call(&["verify-dilog", "--catalog", "delPezzo3"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a seed period"), "{err}");
    let (code, v) = json(&["verify-dilog", "--catalog", "G2"]);
    assert_eq!((code, v["conditional"].clone()), (0, Value::Bool(true)));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_periodica"))
        .args(["check-period", "--catalog", "A2", "--sequence", "(1,2)^5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let (_, same, _) = call(&["check-period", "--catalog", "A2", "--sequence", "(1,2)^5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), same);
    let bad = Command::new(env!("CARGO_BIN_EXE_periodica")).args(["check-period", "--catalog", "A2"]).arg("--bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
