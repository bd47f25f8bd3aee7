use std::path::PathBuf;
use std::process::Command;

use orbitol_core::chp::CurvatureProbe;
use orbitol_core::toledo::{presets, ChernResult, ToledoResult, ValidationReport};
use orbitol_core::Rational;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbitol"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let doc = if text.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {text}"))
    };
    (code, doc)
}

fn ok(args: &[&str]) -> Value {
    let (code, doc) = run(args);
    assert_eq!(code, 0, "{args:?} -> {doc}");
    doc
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbitol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn rational(v: &Value) -> Rational {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn chi_of_237() {
    let doc = ok(&["chi", "--genus", "0", "--cones", "2,3,7"]);
    assert_eq!(doc["chi"], serde_json::json!({"num": -1, "den": 42}));
    assert_eq!(doc["hyperbolic"], true);
}

#[test]
fn euler_of_trivial_genus2_bundle() {
    let doc = ok(&[
        "euler",
        "--seifert",
        r#"{"base":{"genus":2,"cone_orders":[]},"q0":0,"windings":[]}"#,
    ]);
    assert_eq!(rational(&doc["euler"]), Rational::zero());
}

#[test]
fn lattice_and_tangent() {
    let doc = ok(&["lattice", "--genus", "0", "--cones", "2,3,7", "--value", "1/84"]);
    assert_eq!(doc["member"], false);
    assert_eq!(rational(&doc["generator"]), Rational::new(1, 42));
    let doc = ok(&["tangent", "--signature", r#"{"genus":0,"cone_orders":[2,3,7]}"#]);
    assert_eq!(rational(&doc["euler"]), Rational::new(-1, 42));
    assert_eq!(doc["euler"], doc["chi"]);
}

#[test]
fn pullback_to_genus_two() {
    let doc = ok(&[
        "pullback",
        "--seifert",
        r#"{"base":{"genus":0,"cone_orders":[2,3,7]},"q0":-1,"windings":[1,1,1]}"#,
        "--covering",
        r#"{"degree":84,"stabilizers":[[1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1],[1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1],[1,1,1,1,1,1,1,1,1,1,1,1]]}"#,
    ]);
    assert_eq!(doc["covered_signature"], serde_json::json!({"genus": 2, "cone_orders": []}));
    assert_eq!(rational(&doc["euler"]), Rational::integer(-2));
    assert_eq!(doc["relative_euler"], doc["base_relative_euler"]);
}

#[test]
fn curvature_probe_is_pinched_and_seeded() {
    let doc = ok(&["curvature-probe", "--samples", "100000"]);
    let probe: CurvatureProbe = serde_json::from_value(doc).unwrap();
    assert!(probe.min >= -4.0 - 1e-9 && probe.max <= -1.0 + 1e-9);
    let a = ok(&["curvature-probe", "--samples", "500", "--seed", "9"]);
    let b = ok(&["curvature-probe", "--samples", "500", "--seed", "9"]);
    assert_eq!(a, b);
}

#[test]
fn toledo_genus2_variants() {
    let doc = ok(&["toledo", "--preset", "genus2", "--rel-tol", "1e-9", "--jobs", "2"]);
    let r: ToledoResult = serde_json::from_value(doc["toledo"].clone()).unwrap();
    assert!((r.tau.abs() - 2.0).abs() < 1e-6 && r.lattice.member);
    assert_eq!(doc["rigidity"]["consistent"], true);

    let doc = ok(&["toledo", "--preset", "genus2", "--targets", "conjugate", "--map", "antiholomorphic"]);
    let anti: ToledoResult = serde_json::from_value(doc["toledo"].clone()).unwrap();
    assert!((anti.tau + r.tau).abs() < 1e-6);

    let doc = ok(&["toledo", "--preset", "genus2", "--targets", "trivial", "--map", "constant"]);
    assert!(doc["toledo"]["tau"].as_f64().unwrap().abs() < 1e-9);

    let doc = ok(&["chern", "--preset", "genus2", "--rel-tol", "1e-9"]);
    let c: ChernResult = serde_json::from_value(doc["chern"].clone()).unwrap();
    assert!((c.c1 - 1.5 * r.tau).abs() < 1e-6);
}

#[test]
fn triangle_group_probe_and_validation() {
    let (code, doc) = run(&["verify-rep", "--preset", "triangle-block:2,3,7"]);
    assert_eq!(code, 1);
    assert_eq!(doc["valid"], false);
    let report: ValidationReport = serde_json::from_value(doc["report"].clone()).unwrap();
    assert!(report.source_form < 1e-9 && report.target_form < 1e-9);

    let (code, _) = run(&["toledo", "--preset", "triangle-block:2,3,7"]);
    assert_eq!(code, 1);
    let doc = ok(&["toledo", "--preset", "triangle-block:2,3,7", "--probe"]);
    let tau = doc["toledo"]["tau"].as_f64().unwrap();
    assert!((tau.abs() - 1.0 / 42.0).abs() < 1e-4);
    assert_eq!(doc["toledo"]["lattice"]["member"], false);
    assert_eq!(doc["validation"]["failures"].as_array().map(|f| f.is_empty()), Some(false));

    let doc = ok(&["verify-rep", "--preset", "triangle:5,5,5"]);
    assert_eq!(doc["valid"], true);
    let (code, doc) = run(&["verify-rep", "--preset", "triangle:2,3,7"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "validation");
}

#[test]
fn representation_file_with_inferred_domain() {
    let (rep, _) = presets::genus2();
    let path = scratch("genus2.json", &serde_json::to_string(&rep).unwrap());
    let doc = ok(&["toledo", "--rep", path.to_str().unwrap()]);
    assert!((doc["toledo"]["tau"].as_f64().unwrap().abs() - 2.0).abs() < 1e-6);
    let doc = ok(&["verify-rep", "--rep", path.to_str().unwrap()]);
    assert_eq!(doc["valid"], true);
}

#[test]
fn job_files() {
    let job = scratch("chi.json", r#"{"command":"chi","genus":0,"cones":[3,3,4]}"#);
    let doc = ok(&["chi", "--file", job.to_str().unwrap()]);
    assert_eq!(rational(&doc["chi"]), Rational::new(-1, 12));

    let (code, doc) = run(&["euler", "--file", job.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "validation");

    let bad = scratch("bad.json", r#"{"command":"chi","genus":0,"colour":"red"}"#);
    assert_eq!(run(&["chi", "--file", bad.to_str().unwrap()]).0, 1);

    let job = scratch(
        "toledo.json",
        r#"{"command":"toledo","source":{"preset":"genus2"},"rel_tol":1e-9,"jobs":1}"#,
    );
    let doc = ok(&["toledo", "--file", job.to_str().unwrap()]);
    assert!((doc["toledo"]["tau"].as_f64().unwrap().abs() - 2.0).abs() < 1e-6);
}

#[test]
fn identity_check_modes() {
    let doc = ok(&["identity-check", "--tau-rel", "1", "--e-rel", "1/2"]);
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["exact"], true);
    let doc = ok(&["identity-check", "--tau-rel", "0.6666666", "--e-rel", "0", "--tol", "1e-6"]);
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["exact"], false);
    let doc = ok(&["identity-check", "--tau-rel", "-2/3", "--e-rel", "0"]);
    assert_eq!(doc["holds"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["chi"]).0, 64);
    assert_eq!(run(&["toledo", "--preset", "nonsense"]).0, 64);
    let (code, doc) = run(&["toledo", "--preset", "genus2", "--rel-tol", "1e-16", "--max-depth", "2"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "non-convergence");
    let (code, doc) = run(&["toledo", "--preset", "genus2", "--map", "antiholomorphic"]);
    assert_eq!(code, 1);
    assert!(doc["error"]["message"].as_str().unwrap().contains("not equivariant"));
    assert_eq!(run(&["chi", "--genus", "0", "--cones", "1"]).0, 1);
}
