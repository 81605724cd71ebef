//! End-to-end runs of the `periodica` binary.
//!
//! Golden reports live in `tests/golden/`; rerun with `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn periodica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodica"))
        .args(args)
        .current_dir(repo_root())
        .env_remove("PERIODICA_FIELD")
        .env_remove("PERIODICA_TRUNCATION")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn golden(name: &str, args: &[&str]) {
    let out = periodica(args);
    assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(got, want, "{name} differs from its golden report");
}

#[test]
fn golden_ex5_6() {
    golden("ex5.6", &["reproduce", "ex5.6", "--n", "1", "--m", "2", "--field", "F2"]);
}

#[test]
fn golden_ex5_8() {
    golden("ex5.8", &["reproduce", "ex5.8", "--n", "3"]);
}

#[test]
fn golden_ex5_9() {
    golden("ex5.9", &["reproduce", "ex5.9"]);
}

#[test]
fn golden_lemma4_1() {
    golden("lemma4.1", &["reproduce", "lemma4.1", "--algebra", "data/a2.alg", "--m", "2"]);
}

#[test]
fn golden_prop3_10() {
    golden("prop3.10", &["reproduce", "prop3.10", "--preset", "linear 2", "--samples", "10"]);
}

#[test]
fn golden_prop3_25() {
    golden("prop3.25", &["reproduce", "prop3.25", "--preset", "linear 2", "--samples", "10"]);
}

#[test]
fn reports_follow_the_schema() {
    let v = json(&periodica(&["reproduce", "ex5.8", "--n", "3"]));
    assert_eq!(v["schema"], "periodica.report/v1");
    assert_eq!(v["verdict"], "PASS");
    for key in ["target", "claim", "parameters", "inputs", "bounds", "checks", "data", "cited"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn input_files_are_hashed() {
    let v = json(&periodica(&["cohomology", "--complex", "data/s2_resolution.cpx"]));
    let inputs = v["inputs"].as_array().unwrap();
    assert!(inputs.len() >= 2, "complex and algebra files: {inputs:?}");
    for i in inputs {
        assert_eq!(i["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["reproduce", "prop3.10", "--preset", "linear 2", "--samples", "5", "--seed", "19"];
    let a = periodica(&args);
    let b = periodica(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn markdown_output() {
    let out = periodica(&["--format", "markdown", "reproduce", "ex5.9"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("## Checks"), "{text}");
    assert!(text.contains("Cited, not computed"), "{text}");
}

#[test]
fn acyclic_complex_has_zero_cohomology() {
    let v = json(&periodica(&["complex", "cohomology", "--complex", "data/acyclic.cpx"]));
    let c = &v["data"]["complex"];
    assert_eq!(c["acyclic"], true);
    assert!(c["cohomology_dims"].as_array().unwrap().iter().all(|x| x == 0), "{c}");
}

#[test]
fn field_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_periodica"))
        .args(["reproduce", "ex5.6", "--n", "1", "--m", "2"])
        .current_dir(repo_root())
        .env("PERIODICA_FIELD", "F2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["data"]["period"]["value"], 1, "{v}");
    assert_eq!(v["parameters"]["field"], "F2");
}

#[test]
fn parse_error_exits_3() {
    let out = periodica(&["algebra", "show", "--algebra", "data/syntax_error.alg"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.cpx");
    std::fs::write(&path, "algebra preset linear 2\nperiod 2\nmodule 0 = P(\n").unwrap();
    let out = periodica(&["cohomology", "--complex", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn precondition_violations_exit_4() {
    let out = periodica(&["cohomology", "--complex", "data/bad_square.cpx"]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
    let out = periodica(&["cohomology", "--complex", "data/does_not_exist.cpx"]);
    assert_eq!(code(&out), 4);
    assert!(!out.stderr.is_empty());
}

#[test]
fn inconclusive_exits_5() {
    let out = periodica(&["reproduce", "lemma4.1", "--algebra", "data/dual.alg"]);
    assert_eq!(code(&out), 5, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verdict"], "INCONCLUSIVE");
}

#[test]
fn failed_check_exits_6() {
    let out = periodica(&["hochschild", "formality", "--preset", "dual-numbers", "--m", "2"]);
    assert_eq!(code(&out), 6, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verdict"], "FAIL");
}

#[test]
fn usage_error_exits_2() {
    assert_eq!(code(&periodica(&["reproduce", "ex9.9"])), 2);
}
