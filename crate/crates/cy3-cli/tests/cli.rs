//! End-to-end tests of the `cy3` binary: stdout contracts, exit codes,
//! and model-file loading.

use std::path::Path;
use std::process::{Command, Output};

fn cy3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cy3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn verify_paper_passes_and_pins_the_headline_values() {
    let out = cy3(&["verify-paper"]);
    let text = stdout(&out);
    assert!(out.status.success(), "verify-paper failed:\n{text}");
    assert!(text.contains("H_phi^3 = 54*x*y*z - 243 PASS"));
    assert!(text.contains("paper_sum = 18*a*b - 27*b - 333 PASS"));
    assert!(text.contains(" INFO"), "divergence note missing");
    assert!(!text.contains(" FAIL"), "unexpected failing check:\n{text}");
    assert!(text.contains(", 0 failed,"));
}

#[test]
fn verify_paper_json_is_deterministic() {
    let a = cy3(&["verify-paper", "--json"]);
    let b = cy3(&["verify-paper", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).expect("report is JSON");
    assert_eq!(doc["results"]["failed"], 0);
    assert!(doc["inputs"]["model.x_phi.sha256"].is_string());
    assert!(!doc["citations"].as_array().unwrap().is_empty());
}

#[test]
fn cube_and_c2_render_exact_values() {
    let out = cy3(&["cube", "--model", "builtin:x_phi", "--divisor", "template:H_phi"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cube(template:H_phi) = 54*x*y*z - 243\n");

    let out = cy3(&["c2", "--model", "builtin:x_phi", "--divisor", "template:H_phi"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "c2(template:H_phi) = 162\n");

    let out = cy3(&["cube", "--model", "builtin:x_t", "--divisor", "label:S1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cube(label:S1) = -3\n");
}

#[test]
fn cube_json_reports_the_value() {
    let out = cy3(&[
        "cube",
        "--model",
        "builtin:x_phi",
        "--divisor",
        "template:H_phi",
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
    assert_eq!(doc["results"]["cube"], "54*x*y*z - 243");
    assert_eq!(doc["inputs"]["divisor"], "template:H_phi");
}

#[test]
fn hilbert_reports_values_and_divisibility() {
    let out = cy3(&["hilbert", "--d3", "1053", "--dc2", "162"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P(n) = (351*n^3 + 27*n)/2"));
    assert!(text.contains("P(1) = 189"));
    assert!(text.contains("P(2) = 1431"));
    assert!(text.contains("3 | d3 holds"));
}

#[test]
fn hilbert_rejects_non_integer_valued_pairs() {
    let out = cy3(&["hilbert", "--d3", "1", "--dc2", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not integer-valued"));
}

#[test]
fn hilbert_not_applicable_case() {
    let out = cy3(&["hilbert", "--d3", "8", "--dc2", "-4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P(1) = 1"));
    assert!(text.contains("not applicable (d.c2 mod 6 = 2)"));
}

#[test]
fn match_paper_finds_the_known_solutions() {
    let out = cy3(&["match", "--equation", "paper", "--bound", "0", "--box", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("equation (paper): 6*x*y*z = 2*a*b - 3*b - 10"));
    assert!(text.contains("a=2 b=16 x=1 y=1 z=1 (common value -189)"));
    assert!(text.contains("a=7 b=14 x=6 y=2 z=2 (common value 1053)"));
}

#[test]
fn match_standard_reports_the_obstruction_without_searching() {
    let out = cy3(&["match", "--equation", "standard", "--bound", "0", "--box", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("no integer solutions"));
    assert!(text.contains("modulo 3"));
    assert!(text.contains("(no search performed)"));
}

#[test]
fn match_rejects_bad_equation_names() {
    let out = cy3(&["match", "--equation", "weird", "--box", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn match_requires_the_box_flag() {
    let out = cy3(&["match"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_check_paper_passes() {
    let out = cy3(&["family-check", "--equation", "paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reduced identity: holds (both sides equal 288*C^4 - 144*C^2)"));
    assert!(text.contains("verdict: PASS"));
}

#[test]
fn family_check_standard_fails_with_refutation() {
    let out = cy3(&["family-check", "--equation", "standard"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("reduced identity: FAILS"));
    assert!(text.contains("refutation: no integer solutions"));
    assert!(text.contains("verdict: FAIL"));
}

#[test]
fn distinguish_names_both_witnesses() {
    let out = cy3(&["distinguish", "builtin:x_phi", "builtin:x_t"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .contains("distinguished: F_ijk.c2 = -4 (mod 6 fails), F_ijk^3 = 8 (mod 3 fails)"));
    assert!(text.contains("X_phi: c2 divisible by 6 on all generators = true"));
    assert!(text.contains("X_T: c2 divisible by 6 on all generators = false"));
}

#[test]
fn distinguish_same_model_is_inconclusive() {
    let out = cy3(&["distinguish", "builtin:x_phi", "builtin:x_phi"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn exported_model_loads_back_byte_identically() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("x_t.json");
    let path_str = path.to_str().unwrap();
    let out = cy3(&["export-model", "--model", "builtin:x_t", "--out", path_str]);
    assert!(out.status.success());

    // Commands on the file agree byte-for-byte with the builtin.
    for sub in ["cube", "c2"] {
        let from_builtin = cy3(&[sub, "--model", "builtin:x_t", "--divisor", "template:H_T"]);
        let from_file = cy3(&[sub, "--model", path_str, "--divisor", "template:H_T"]);
        assert!(from_builtin.status.success() && from_file.status.success());
        assert_eq!(from_builtin.stdout, from_file.stdout);
    }

    // Re-exporting the loaded file reproduces its exact bytes.
    let reexport = cy3(&["export-model", "--model", path_str]);
    assert!(reexport.status.success());
    let original = std::fs::read(&path).expect("exported file readable");
    assert_eq!(reexport.stdout, original);
}

#[test]
fn schema_violation_exits_2_and_names_the_field() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"m","basis":["G"],"triple_products":[],"bogus":1}"#,
    )
    .unwrap();
    let out = cy3(&["cube", "--model", path.to_str().unwrap(), "--divisor", "label:G"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"));
}

#[test]
fn surface_rule_violation_exits_2() {
    let dir = tempfile::tempdir().expect("tempdir");
    let good = dir.path().join("x_phi.json");
    let out = cy3(&["export-model", "--model", "builtin:x_phi", "--out", good.to_str().unwrap()]);
    assert!(out.status.success());

    let mut doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&good).unwrap()).unwrap();
    doc["surfaces"]["E000"]["k2"] = serde_json::Value::String("8".to_string());
    let bad = dir.path().join("corrupt.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let out = cy3(&["cube", "--model", bad.to_str().unwrap(), "--divisor", "label:E000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("model validation failed"));
}

#[test]
fn unknown_specs_exit_2() {
    let out = cy3(&["cube", "--model", "builtin:nope", "--divisor", "label:G"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cy3(&["cube", "--model", "builtin:x_phi", "--divisor", "H_phi"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("template:"));

    let out = cy3(&[
        "cube",
        "--model",
        Path::new("/nonexistent/model.json").to_str().unwrap(),
        "--divisor",
        "label:G",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
