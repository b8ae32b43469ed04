//! End-to-end runs of the `sx` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sx(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn homology_of_the_homology_sphere() {
    let out = sx(&["homology", "--field", "0", "fixtures:bl_sigma3_16"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"field": "Q", "reduced_betti": [0, 0, 0, 1]}));
}

#[test]
fn ziegler_ball_is_not_three_shelled() {
    let out = sx(&["certify", "shelled", "-k", "3", "fixtures:ziegler_b2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "REFUTED");
}

#[test]
fn generated_complex_pipes_into_aut() {
    let gen = sx(&["generate", "klee-novik", "1", "3"], None);
    assert_eq!(gen.status.code(), Some(0));
    let aut = sx(&["aut", "-"], Some(std::str::from_utf8(&gen.stdout).unwrap()));
    assert_eq!(aut.status.code(), Some(0));
    assert_eq!(json(&aut)["order"], "20");
}

#[test]
fn sources_are_interchangeable() {
    let dir = std::env::temp_dir().join(format!("sx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lutz.fac");
    let export = sx(&["fixtures", "export", "lutz_s2_8", path.to_str().unwrap()], None);
    assert_eq!(export.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let a = sx(&["info", "fixtures:lutz_s2_8"], None);
    let b = sx(&["info", path.to_str().unwrap()], None);
    let c = sx(&["info", "-"], Some(&text));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verdict_exit_codes() {
    let proved = sx(&["certify", "stacked-ball", "-k", "2", "fixtures:lutz_b2"], None);
    assert_eq!(proved.status.code(), Some(0));
    let unknown = sx(&["certify", "stellated", "-k", "2", "--budget-moves", "10", "--restarts", "1", "fixtures:dfm_s3_16"], None);
    assert_eq!(unknown.status.code(), Some(2), "{}", String::from_utf8_lossy(&unknown.stdout));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(sx(&["frobnicate"], None).status.code(), Some(64));
    assert_eq!(sx(&["homology", "--field", "4", "fixtures:lutz_s2_8"], None).status.code(), Some(64));
    assert_eq!(sx(&["info", "fixtures:nope"], None).status.code(), Some(65));
    assert_eq!(sx(&["info", "-"], Some("{not json")).status.code(), Some(65));
    assert_eq!(sx(&["info", "/nonexistent/file.fac"], None).status.code(), Some(65));
}

#[test]
fn seeded_searches_are_deterministic() {
    let args = ["certify", "stellated", "-k", "1", "--seed", "5", "fixtures:ziegler_s2_10"];
    let a = sx(&args, None);
    let b = sx(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parallel = sx(&["certify", "stellated", "-k", "1", "--seed", "5", "--jobs", "4", "fixtures:ziegler_s2_10"], None);
    assert_eq!(parallel.status.code(), Some(0));
}

#[test]
fn bar_sum_and_replay() {
    let bar = sx(&["bar", "--k", "1", "fixtures:ziegler_s2_10"], None);
    assert_eq!(bar.status.code(), Some(0));
    let ball = sx(&["certify", "one-stacked", "-"], Some(std::str::from_utf8(&bar.stdout).unwrap()));
    assert_eq!(ball.status.code(), Some(0));

    let s = sx(&["generate", "standard-sphere", "2"], None);
    let text = std::str::from_utf8(&s.stdout).unwrap();
    let dir = std::env::temp_dir().join(format!("sx-sum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.fac");
    std::fs::write(&path, text).unwrap();
    let sum = sx(&["sum", path.to_str().unwrap(), path.to_str().unwrap(), "--format", "json"], None);
    assert_eq!(sum.status.code(), Some(0));
    let facets = json(&sum)["facets"].as_array().unwrap().len();
    assert_eq!(facets, 6);

    let cert = dir.join("cert.json");
    let export = sx(&["fixtures", "export", "lutz_b2_shelling_cert", cert.to_str().unwrap()], None);
    assert_eq!(export.status.code(), Some(0));
    let replay = sx(&["replay", cert.to_str().unwrap()], None);
    let b2 = sx(&["fixtures", "export", "lutz_b2"], None);
    assert_eq!(replay.stdout, b2.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn iso_reports_none() {
    let out = sx(&["iso", "fixtures:lutz_s2_8", "fixtures:ziegler_s2_10"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["bijection"], "none");
}

#[test]
fn verify_command_runs_selected_claims() {
    let out = sx(&["verify-paper", "--only", "1,8", "--pretty"], None);
    assert_eq!(out.status.code(), Some(0));
    let claims = json(&out);
    assert_eq!(claims.as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS  1"));
}
