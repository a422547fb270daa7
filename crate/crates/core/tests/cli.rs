use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn annulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annulus")).args(args).env("ANNULUS_THREADS", "2").output().unwrap()
}

#[test]
fn build_then_verify_round_trip_and_perturbation_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let z3 = data("z3.json");
    let o = annulus(&["--out", out, "tube", "build", "--input", z3.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = dir.path().join("table.json");
    assert!(annulus(&["tube", "verify", "--input", table.to_str().unwrap()]).status.success());

    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&table).unwrap()).unwrap();
    let x = v["products"][0][3][0].as_f64().unwrap();
    v["products"][0][3][0] = (x + 1e-3).into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    assert_eq!(annulus(&["tube", "verify", "--input", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let s3 = data("s3.json");
    let run = || annulus(&["--seed", "9", "tube", "blocks", "--input", s3.to_str().unwrap()]).stdout;
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "annulus.report/1");
    assert_eq!(v["data"]["block_count"], 8);
    assert_eq!(v["provenance"]["seed"], 9);
}

#[test]
fn csv_reports_and_bad_inputs() {
    let z2 = data("z2.json");
    let o = annulus(&["--format", "csv", "morita", "verify", "--group", z2.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("name,residual,relation,threshold,pass\n"));

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, r#"{"order": 2, "mul": [[0, 1], [1, 1]]}"#).unwrap();
    assert_eq!(annulus(&["tube", "verify", "--input", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(annulus(&["--tol", "-1", "selftest"]).status.code(), Some(2));
}
