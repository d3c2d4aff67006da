use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn sqtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqtile")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn stratum_of_s3() {
    let s3 = fixture("s3.origami");
    let out = sqtile(&["stratum", "-i", s3.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("kappa: (2,2)"), "{text}");
    assert!(text.contains("genus: 3"));
}

#[test]
fn json_envelope_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("veech.json");
    let s3 = fixture("s3.origami");
    let out = sqtile(&["veech", "-i", s3.to_str().unwrap(), "--member", "1,2,0,1", "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["command"], "veech");
    assert_eq!(v["sections"][0]["name"], "veech");
    assert_eq!(v["sections"][0]["data"]["index"], 3);
    assert_eq!(v["sections"][1]["data"][0]["member"], true);
}

#[test]
fn orbit_edges_export() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.txt");
    let s4 = fixture("s4.origami");
    let out = sqtile(&["orbit", "-i", s4.to_str().unwrap(), "--edges", edges.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("orbit size: 32"));
    let lines = std::fs::read_to_string(&edges).unwrap();
    let edges = lines.lines().filter(|l| l.split_whitespace().nth(1).is_some_and(|g| g == "L" || g == "R"));
    assert_eq!(edges.count(), 64);
}

#[test]
fn kz_with_reference_basis() {
    let s3 = fixture("s3.origami");
    let basis = fixture("s3.basis");
    let out = sqtile(&["kz", "-i", s3.to_str().unwrap(), "--word", "L2", "--basis", basis.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("symplectic: true"));
    assert!(text.contains("char poly: x^4 - 2*x^2 + 1"));
}

#[test]
fn mmy_with_given_words() {
    let s3 = fixture("s3.origami");
    let out = sqtile(&["mmy", "-i", s3.to_str().unwrap(), "--phi1", "L2R2L2R2L2R2L2", "--phi2", "L2R2", "--strict"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: Pass"));
}

#[test]
fn strict_inconclusive_search_exits_4() {
    let s4 = fixture("s4.origami");
    let out = sqtile(&["mmy", "-i", s4.to_str().unwrap(), "--budget", "2", "--strict"]);
    assert_eq!(out.status.code(), Some(4), "{}", stdout(&out));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.origami");
    std::fs::write(&bad, "n=4\nr=(1,2)\nu=(3,4)\n").unwrap();
    let out = sqtile(&["stratum", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(sqtile(&["stratum"]).status.code(), Some(2));
    let s3 = fixture("s3.origami");
    let out = sqtile(&["kz", "-i", s3.to_str().unwrap(), "--word", "L2X"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let s4 = fixture("s4.origami");
    let out = sqtile(&["cusps", "-i", s4.to_str().unwrap(), "--orbit-cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_sqtile"))
        .args(["enumerate", "--degree", "8", "--stratum", "2,2"])
        .env("SQTILE_MAX_ORIGAMIS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("origamis"));
    assert_eq!(sqtile(&["enumerate", "--degree", "11", "--stratum", "2,2"]).status.code(), Some(3));
}

#[test]
fn torus_lyapunov_is_empty() {
    let t = fixture("torus.origami");
    let out = sqtile(&["lyapunov", "-i", t.to_str().unwrap(), "--steps", "100"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("nu1 = 1"));
}

#[test]
fn enumerate_small_degree() {
    let out = sqtile(&["enumerate", "--degree", "4", "--stratum", "2", "--max-rank", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("candidates"));
}
