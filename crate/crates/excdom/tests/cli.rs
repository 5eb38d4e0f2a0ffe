use std::io::Write;
use std::process::{Command, Output, Stdio};

use excdom::json::{AlbertJson, WJson};
use excdom_core::albert::AlbertElement;
use excdom_core::cayley::{default_null_unit, Octonion};
use excdom_core::type_v::WElement;
use serde_json::Value;

fn excdom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_excdom"))
        .args(args)
        .env_remove("EXCDOM_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn v(x: &AlbertElement) -> String {
    serde_json::to_string(&AlbertJson::from(x)).unwrap()
}

fn w(x: &WElement) -> String {
    serde_json::to_string(&WJson::from(x)).unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn e(i: usize) -> AlbertElement {
    AlbertElement::e(i)
}

#[test]
fn gen_is_deterministic() {
    let a = excdom(&["gen", "--seed", "42", "--n", "2"], "");
    let b = excdom(&["gen", "--seed", "42", "--n", "2"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(lines(&a).len(), 2);
    let c = excdom(&["gen", "--seed", "43", "--n", "2"], "");
    assert_ne!(a.stdout, c.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_excdom")).args(["gen", "--n", "2"]).env("EXCDOM_SEED", "42").output().unwrap();
    assert_eq!(env.stdout, a.stdout);
    let empty = excdom(&["gen", "--n", "0"], "");
    assert!(empty.status.success());
    assert!(empty.stdout.is_empty());
}

#[test]
fn generated_boundary_points_classify_as_boundary() {
    for system in ["V", "W"] {
        let g = excdom(&["gen", "--seed", "5", "--n", "4", "--system", system, "--target-norm", "1.0"], "");
        let out = excdom(&["classify", "--system", system], &String::from_utf8(g.stdout).unwrap());
        assert_eq!(out.status.code(), Some(1));
        for verdict in lines(&out) {
            assert_eq!(verdict["location"], "boundary");
        }
    }
}

#[test]
fn eval_reports() {
    let input = [v(&AlbertElement::diag_re([1.0, 2.0, 3.0])), v(&AlbertElement::ZERO), v(&e(0))].join("\n");
    let out = excdom(&["eval"], &input);
    assert!(out.status.success());
    let r = lines(&out);
    assert_eq!(r[0]["det"], serde_json::json!([6.0, 0.0]));
    let roots: Vec<f64> = serde_json::from_value(r[0]["roots"].clone()).unwrap();
    for (a, b) in roots.iter().zip([9.0, 4.0, 1.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert_eq!(r[0]["adjoint"]["alpha"], serde_json::json!([[6.0, 0.0], [3.0, 0.0], [2.0, 0.0]]));
    assert_eq!(r[1]["rank"], 0);
    assert_eq!(r[2]["minpoly"], serde_json::json!([1.0, -1.0, 0.0, 0.0]));
    assert_eq!(r[2]["rank"], 1);
}

#[test]
fn classify_exit_codes() {
    let cases = [(e(0).scale_re(0.5), 0, "interior"), (e(0) + e(1) + e(2), 1, "boundary"), (e(0).scale_re(2.0), 2, "exterior")];
    for (x, code, loc) in cases {
        let out = excdom(&["classify"], &v(&x));
        assert_eq!(out.status.code(), Some(code));
        assert_eq!(lines(&out)[0]["location"], loc);
    }
    let out = excdom(&["classify"], &v(&(e(0) + e(1) + e(2))));
    let verdict = &lines(&out)[0];
    assert_eq!(verdict["stratum"], 3);
    assert_eq!(verdict["f"], serde_json::json!([0.0, 0.0, 0.0]));
    // the worst verdict decides the exit code
    let out = excdom(&["classify"], &[v(&e(0).scale_re(0.5)), v(&e(0).scale_re(2.0))].join("\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_errors() {
    let u = WElement::new(default_null_unit(), Octonion::ZERO);
    let out = excdom(&["classify", "--system", "V"], &w(&u));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension mismatch"));
    let out = excdom(&["classify"], "{\"alpha\": [[1.0, 0.0],");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1 column"));
    let out = excdom(&["classify", "--bogus"], "");
    assert_eq!(out.status.code(), Some(3));
    let out = excdom(&["classify", "--system", "W"], &w(&u));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn peirce_reports() {
    let input = [v(&e(0)), v(&(e(0) + e(1)))].join("\n");
    let out = excdom(&["peirce"], &input);
    assert!(out.status.success());
    let r = lines(&out);
    assert_eq!(r[0]["dims"], serde_json::json!([10, 16, 1]));
    assert_eq!(r[1]["stratum_cr_type"], serde_json::json!([17, 10]));
    assert_eq!(r[1]["tripotent_cr_type"], serde_json::json!([16, 10]));
    let u = WElement::new(default_null_unit(), Octonion::ZERO);
    let r = lines(&excdom(&["peirce"], &w(&u)));
    assert_eq!(r[0]["dims"], serde_json::json!([5, 10, 1]));
    let out = excdom(&["peirce"], &v(&e(0).scale_re(0.5)));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn embed_points() {
    let out = excdom(&["embed"], &v(&AlbertElement::diag_re([1.0, 2.0, 3.0])));
    let r = &lines(&out)[0];
    assert_eq!(r["point"]["y"]["alpha"], serde_json::json!([[6.0, 0.0], [3.0, 0.0], [2.0, 0.0]]));
    assert_eq!(r["point"]["mu"], serde_json::json!([6.0, 0.0]));
    assert_eq!(r["residuals"], serde_json::json!([0.0, 0.0, 0.0]));
    let out = excdom(&["embed"], &w(&WElement::ZERO));
    let r = &lines(&out)[0];
    assert_eq!(r["z"], serde_json::to_value(AlbertJson::from(&e(0))).unwrap());
}

#[test]
fn verify_passes_and_catches_perturbation() {
    let out = excdom(&["verify", "--n", "1", "--seed", "3"], "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let modules: std::collections::BTreeSet<&str> = checks.iter().map(|c| c["module"].as_str().unwrap()).collect();
    assert_eq!(modules.len(), 7);
    assert!(checks.iter().all(|c| c["trials"] == 1));
    let bad = excdom(&["verify", "--n", "1", "--perturb", "1e-3"], "");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("excdom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (src, dst) = (dir.join("in.jsonl"), dir.join("out.jsonl"));
    std::fs::write(&src, v(&e(1))).unwrap();
    let out = excdom(&["classify", "--in", src.to_str().unwrap(), "--out", dst.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(std::fs::read_to_string(&dst).unwrap().trim()).unwrap();
    assert_eq!(written["stratum"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
