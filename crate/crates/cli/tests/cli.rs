use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dertool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dertool"))
        .args(args)
        .env_remove("DERTOOL_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path());
    let o = dertool(&["--algebra", "T2", "--poly", "--out", out, "certify", "--op", "D", "--e", "E11", "--target", "E12"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cert = dir.path().join("certificate.json");
    let o = dertool(&["verify", path_str(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("verified"));
}

/// `p/q` plus one, as a rational string.
fn bump(cell: &Value) -> Value {
    let s = cell.as_str().unwrap();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<i64>().unwrap(), q.parse::<i64>().unwrap()),
        None => (s.parse::<i64>().unwrap(), 1),
    };
    Value::from(if q == 1 { (p + 1).to_string() } else { format!("{}/{q}", p + q) })
}

fn verify_code(dir: &Path, name: &str, cert: &Value) -> i32 {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(cert).unwrap()).unwrap();
    code(&dertool(&["verify", path_str(&path)]))
}

#[test]
fn single_coefficient_perturbations_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path());
    let o = dertool(&[
        "--poly", "--out", out, "certify", "--op", "D", "--side", "two", "--e", "1", "--a", "t^2 + 1", "--b", "t - 3",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let original: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("certificate.json")).unwrap()).unwrap();
    let degrees = original["preimage"].as_array().unwrap().len();
    assert!(degrees >= 4);
    for k in 1..degrees {
        let mut c = original.clone();
        c["preimage"][k][0] = bump(&c["preimage"][k][0]);
        assert_eq!(verify_code(dir.path(), "p.json", &c), 1, "preimage perturbation at degree {k} accepted");
    }
    for k in 0..original["target"].as_array().unwrap().len() {
        let mut c = original.clone();
        c["target"][k][0] = bump(&c["target"][k][0]);
        assert_eq!(verify_code(dir.path(), "t.json", &c), 1, "target perturbation at degree {k} accepted");
    }
    // Constants lie in ker d/dt: the perturbed preimage is still a preimage.
    let mut c = original.clone();
    c["preimage"][0][0] = bump(&c["preimage"][0][0]);
    assert_eq!(verify_code(dir.path(), "k.json", &c), 0);
}

#[test]
fn surjectivity_of_i_minus_shift() {
    let o = dertool(&["--poly", "--json", "surjectivity", "--op", "I-shift(1)"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["status"], "surjective");
    assert_eq!(v["u"], "-t");

    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    fs::write(&phi, r#"[["1","0"],["0","2"]]"#).unwrap();
    let spec = format!("I-endo:{}", path_str(&phi));
    let o = dertool(&["--algebra", "dual", "surjectivity", "--op", &spec]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("NotInImage"));

    let zero = dir.path().join("zero.json");
    fs::write(&zero, r#"{"matrix": [["0","0"],["0","0"]]}"#).unwrap();
    let spec = format!("I-endo:{}", path_str(&zero));
    let o = dertool(&["--algebra", "dual", "--json", "surjectivity", "--op", &spec]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["report"]["branch"], "nilpotent");
}

#[test]
fn hunt_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path());
    for name in ["a.json", "b.json"] {
        let o = dertool(&["--out", out, "--seed", "7", "hunt", "--mode", "no_idem_in_ker_and_im", "--trials", "30", "--report", name]);
        assert_eq!(code(&o), 0);
    }
    let a = fs::read(dir.path().join("a.json")).unwrap();
    let b = fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);

    let o = Command::new(env!("CARGO_BIN_EXE_dertool"))
        .args(["--json", "--seed", "7", "hunt", "--mode", "transfer", "--trials", "5"])
        .env("DERTOOL_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&o)["seed"], 99);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(code(&dertool(&["--algebra", "T9", "check", "--op", "id"])), 2);
    assert_eq!(code(&dertool(&["--poly", "exp", "--op", "D", "--a", "t^2 +"])), 2);
    assert_eq!(code(&dertool(&["--algebra", "T2", "exp", "--op", "ad(E13)", "--a", "E11"])), 2);
    assert_eq!(code(&dertool(&["hunt", "--mode", "nope"])), 2);
    assert_eq!(code(&dertool(&["verify", "/nonexistent/cert.json"])), 2);
    let o = dertool(&["--json", "--poly", "check", "--op", "sideways"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["class"], "input");
}

#[test]
fn negatives_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let euler = dir.path().join("euler.json");
    fs::write(&euler, r#"[["0","0"],["0","1"]]"#).unwrap();
    let spec = format!("matrix:{}", path_str(&euler));
    // Not locally nilpotent, so the exponential series does not terminate.
    assert_eq!(code(&dertool(&["--algebra", "dual", "exp", "--op", &spec])), 1);
    // I - shift(0) is the zero operator.
    assert_eq!(code(&dertool(&["--poly", "surjectivity", "--op", "I-shift(0)"])), 1);
}

#[test]
fn classification_and_series_reports() {
    let o = dertool(&["--algebra", "T2", "--json", "check", "--op", "ad(E12)"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["is_derivation"], true);
    assert_eq!(v["locally_nilpotent"]["verdict"], "yes");
    assert_eq!(v["locally_nilpotent"]["index"], 2);

    let o = dertool(&["--algebra", "T2", "--json", "exp", "--op", "ad(E12)", "--a", "E11"]);
    let v = stdout_json(&o);
    assert_eq!(v["xi"], "E12");
    assert_eq!(v["exp"], "E11 - E12");

    let o = dertool(&["--poly", "--json", "log", "--op", "I-shift(1)", "--a", "t^2"]);
    assert_eq!(stdout_json(&o)["lambda"], "2*t");

    let o = dertool(&["--json", "series-claim"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["results"].as_array().unwrap().len(), 10);
}

#[test]
fn grading_and_image_of_euler_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let euler = dir.path().join("euler.json");
    fs::write(&euler, r#"[["0","0"],["0","1"]]"#).unwrap();
    let spec = format!("matrix:{}", path_str(&euler));
    let o = dertool(&["--algebra", "dual", "--json", "grade", "--op", &spec]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["eigenvalues"], serde_json::json!(["0", "1"]));
    assert_eq!(v["blocks"], serde_json::json!([["1"], ["x"]]));

    let o = dertool(&["--algebra", "dual", "--json", "image", "--op", &spec]);
    assert_eq!(stdout_json(&o)["image"], serde_json::json!(["x"]));

    let o = dertool(&["--json", "jc", "--op", &spec]);
    assert_eq!(stdout_json(&o)["nilpotency_index"], 0);
}

#[test]
fn ederivation_and_spectral_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path());
    let o = dertool(&["--poly", "--out", out, "--json", "certify", "--op", "I-shift(1)", "--target", "1", "--name", "e.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["certificate"]["construction"], "ederiv_via_h");
    assert_eq!(v["certificate"]["meta"]["preimage_text"], "-t");
    assert_eq!(code(&dertool(&["verify", path_str(&dir.path().join("e.json"))])), 0);

    let phi = dir.path().join("phi.json");
    fs::write(&phi, r#"[["1","0"],["0","2"]]"#).unwrap();
    let spec = format!("I-endo:{}", path_str(&phi));
    let o = dertool(&["--algebra", "dual", "--out", out, "certify", "--op", &spec, "--target", "x", "--name", "s.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&dertool(&["verify", path_str(&dir.path().join("s.json"))])), 0);
    // 1 is not in the image of I - phi.
    let o = dertool(&["--algebra", "dual", "--out", out, "certify", "--op", &spec, "--target", "1", "--name", "n.json"]);
    assert_eq!(code(&o), 1);
}
