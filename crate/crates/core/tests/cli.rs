use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bvsaito")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn spec(name: &str) -> String {
    specs().join(name).to_string_lossy().into_owned()
}

fn write_spec(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("bvsaito-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--mode", "machine"]);
    let (code, out, _) = run(&all);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn trivialize_human() {
    let (code, out, err) = run(&["trivialize", "--spec", &spec("e7.toml"), "--input", "x1^3"]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "x1^3 + (2/9)*z\n", ""));
}

#[test]
fn machine_output_is_stable() {
    let args = ["reduce", "--spec", &spec("e7.toml"), "--input", "x1^4", "--mode", "machine"];
    let first = run(&args);
    assert_eq!(first, run(&args));
    let v: Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "reduce");
    assert_eq!(v["result"]["reduction"]["class"], "-(5/9)*z*[x1]_f");
}

#[test]
fn milnor_and_pairing() {
    let (code, v) = machine(&["milnor", "--spec", &spec("e7.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mu"], 7);
    assert_eq!(v["result"]["central_charge"], "8/9");
    let (code, v) = machine(&["pairing", "--spec", &spec("a2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["residue_pairing"], serde_json::json!([["0", "1"], ["1", "0"]]));
}

#[test]
fn unfolding_reduction_uses_order() {
    let (code, v) = machine(&["reduce", "--spec", &spec("e7.toml"), "--input", "x1^2*x2^2", "--order", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["s_order"], 2);
    assert!(v["result"]["reduction"]["class"].as_str().unwrap().starts_with("(2/27)*s6*z*[1]_F"));
    // degree-2 terms remain at the cap
    let (code, v) = machine(&["reduce", "--spec", &spec("e7.toml"), "--input", "x1^2*x2^2", "--order", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["exit_code"], 3);
}

#[test]
fn potential_on_a2() {
    let (code, v) = machine(&["potential", "--spec", &spec("a2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["potential"], "-(1/24)*t2^4 + (1/2)*t1^2*t2");
    assert_eq!(v["result"]["wdvv"], true);
}

#[test]
fn rmatrix_reports_both_constructions() {
    let (code, v) = machine(&["rmatrix", "--spec", &spec("a2.toml"), "--order", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["r"][0], serde_json::json!([["1", "0"], ["0", "1"]]));
    assert_eq!(r["reference"]["r"][1], serde_json::json!([["0", "7/48"], ["5/48", "0"]]));
    assert_eq!(r["reference"]["report"]["all_pass"], true);
    assert_eq!(r["report"]["starts_at_identity"], true);
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", "--spec", &spec("e7.toml")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.ends_with("pass")));
    // the R-matrix construction fails its own verification at the A2 point
    let (code, out, _) = run(&["check", "--spec", &spec("a2.toml")]);
    assert_eq!(code, 4);
    assert!(out.contains("R symplectic") && out.contains("FAIL"));
}

#[test]
fn validation_errors_exit_one() {
    let (code, _, err) = run(&["milnor", "--spec", "/nonexistent/spec.toml"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    let bad = write_spec("bad_weight.toml", "variables = [\"x1\"]\nweights = [\"1/0\"]\nf = \"x1^3\"\n");
    let (code, v) = machine(&["milnor", "--spec", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["exit_code"], 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("weights[0]"));
    let (code, _, _) = run(&["milnor", "--spec", &spec("e7.toml"), "--frobnicate"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["decompose", "--spec", &spec("e7.toml")]);
    assert_eq!(code, 1);
    let short = write_spec("short_basis.toml", "variables = [\"x1\"]\nweights = [\"1/3\"]\nf = \"x1^3\"\nbasis = [\"1\"]\n");
    let (code, v) = machine(&["milnor", "--spec", &short]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("basis"));
}

#[test]
fn math_and_truncation_errors() {
    let nonisolated = write_spec("nonisolated.toml", "variables = [\"x1\", \"x2\"]\nweights = [\"1/2\", \"1/2\"]\nf = \"x1^2\"\n");
    let (code, _, err) = run(&["milnor", "--spec", &nonisolated]);
    assert_eq!(code, 2, "{err}");
    let shallow = write_spec(
        "shallow.toml",
        "variables = [\"x1\"]\nweights = [\"1/3\"]\nf = \"(1/3)*x1^3\"\n[orders]\nz_order = 1\n",
    );
    let (code, _, err) = run(&["primitive-form", "--spec", &shallow]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = run(&["rmatrix", "--spec", &spec("a2.toml"), "--point", "s1=0,s2=0"]);
    assert_eq!(code, 2);
}
