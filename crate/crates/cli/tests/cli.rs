use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cellcollapse"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("wait")
}

fn ok(args: &[&str], stdin: &str) -> String {
    let o = run(args, stdin);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn gallery(args: &[&str]) -> String {
    let mut a = vec!["gallery"];
    a.extend_from_slice(args);
    ok(&a, "")
}

fn save(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn dunce_hat_has_no_collapse() {
    let hat = gallery(&["dunce_hat"]);
    let o = run(&["collapse"], &hat);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no collapse"));
}

#[test]
fn grid_collapse_verifies() {
    let g = gallery(&["grid", "--param", "m=2", "n=2"]);
    let cert = ok(&["cat0-collapse", "--root", "0"], &g);
    let out = ok(&["verify"], &cert);
    assert!(out.contains("valid certificate"));
}

#[test]
fn convex_collapse_of_tetrahedron_verifies() {
    let s = gallery(&["simplex", "--param", "d=3"]);
    let cert = ok(&["convex-collapse"], &s);
    ok(&["verify"], &cert);
}

#[test]
fn tampered_certificate_is_rejected() {
    let s = gallery(&["simplex", "--param", "d=2"]);
    let cert = ok(&["collapse"], &s);
    let mut v: Value = serde_json::from_str(&cert).unwrap();
    let steps = v["steps"].as_array_mut().unwrap();
    assert!(steps.len() >= 2);
    steps.reverse();
    let o = run(&["--json", "verify"], &v.to_string());
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["valid"], false);
    assert!(report["step"].is_u64());
}

#[test]
fn malformed_input_is_an_input_error() {
    assert_eq!(code(&run(&["fvector"], "{\"bad\": 1}")), 3);
    assert_eq!(code(&run(&["fvector"], "not json")), 3);
    let bad = r#"{"name":"x","kind":"simplicial","dim":1,"vertices":[{"id":0},{"id":0}],"facets":[[0,1]]}"#;
    assert_eq!(code(&run(&["fvector"], bad)), 3);
    assert_eq!(code(&run(&["gallery", "no_such_thing"], "")), 3);
}

#[test]
fn small_budget_is_exhausted() {
    let s = gallery(&["simplex", "--param", "d=3"]);
    let s = ok(&["sd", "--m", "2"], &s);
    let o = run(&["--budget", "1", "ne"], &s);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn fvector_json() {
    let s = gallery(&["boundary_sphere", "--param", "d=3"]);
    let v: Value = serde_json::from_str(&ok(&["--json", "fvector"], &s)).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([4, 6, 4]));
    assert_eq!(v["euler_characteristic"], 2);
}

#[test]
fn morse_bijection_holds_on_convex_ball() {
    let s = gallery(&["random_convex", "--param", "n=9", "d=2", "seed=3"]);
    let out = ok(&["morse", "--from-point", "1/97,1/89", "--check-bijection"], &s);
    assert!(out.contains("bijection check: ok"), "{out}");
    let out = ok(&["--json", "morse", "--from-vertex", "0"], &gallery(&["simplex", "--param", "d=2"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["morse_vector"], serde_json::json!([1, 0, 0]));
}

#[test]
fn sd_and_ne_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let c = save(dir.path(), "cone.json", &gallery(&["cone", "--param", "d=1"]));
    let sd = dir.path().join("sd.json");
    let o = run(&["sd", "-i", &c, "-o", sd.to_str().unwrap()], "");
    assert_eq!(code(&o), 0);
    // With -o the report stays on stdout.
    assert!(String::from_utf8_lossy(&o.stdout).contains("f-vector [5, 4]"));
    let cert = dir.path().join("ne.json");
    ok(&["ne", "-i", sd.to_str().unwrap(), "-o", cert.to_str().unwrap()], "");
    ok(&["verify", "--cert", cert.to_str().unwrap(), "--complex", sd.to_str().unwrap()], "");
}

#[test]
fn evasive_sphere_is_negative() {
    let s = gallery(&["boundary_sphere", "--param", "d=1"]);
    assert_eq!(code(&run(&["ne"], &s)), 1);
}

#[test]
fn star_collapse_of_lshape() {
    let s = gallery(&["lshape_2d"]);
    let cert = ok(&["star-collapse", "--center", "1/2,1/2"], &s);
    ok(&["verify"], &cert);
}

#[test]
fn hudson_transfers_a_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let c = save(dir.path(), "c.json", &gallery(&["simplex", "--param", "d=2"]));
    let cert = save(dir.path(), "cert.json", &ok(&["collapse", "-i", &c], ""));
    let d = save(dir.path(), "d.json", &gallery(&["random_subdivision", "--param", "d=2", "k=3", "seed=1"]));
    let out = ok(&["hudson", "-i", &c, "--cert", &cert, "--subdivision", &d], "");
    ok(&["verify"], &out);
    // A certificate for another complex is refused.
    let other = save(dir.path(), "o.json", &gallery(&["simplex", "--param", "d=1"]));
    assert_eq!(code(&run(&["hudson", "-i", &other, "--cert", &cert, "--subdivision", &d], "")), 3);
}

#[test]
fn verify_against_the_wrong_complex() {
    let dir = tempfile::tempdir().unwrap();
    let s = gallery(&["simplex", "--param", "d=2"]);
    let cert = save(dir.path(), "cert.json", &ok(&["collapse"], &s));
    let same = save(dir.path(), "same.json", &s);
    ok(&["verify", "--cert", &cert, "--complex", &same], "");
    let other = save(dir.path(), "other.json", &gallery(&["simplex", "--param", "d=3"]));
    assert_eq!(code(&run(&["verify", "--cert", &cert, "--complex", &other], "")), 3);
}

#[test]
fn json_error_report() {
    let o = run(&["--json", "fvector"], "[]");
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], false);
}
