use std::process::{Command, Output};

use serde_json::Value;

fn qkgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkgr")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn series_counts() {
    let o = qkgr(&["series", "--kind", "JT", "--n", "1", "--N", "2", "--D", "2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "qkgr/1");
    assert_eq!(v["count"], 3);
    let o = qkgr(&["series", "--kind", "IT_level", "--l", "1", "--n", "2", "--N", "4", "--D", "2"]);
    assert_eq!(json(&o)["count"], 6);
    let o = qkgr(&["series", "--kind", "IT_level", "--l", "-1", "--n", "2", "--N", "4", "--D", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 4);
}

#[test]
fn usage_errors_exit_2() {
    let o = qkgr(&["series", "--kind", "Nope", "--n", "1", "--N", "2", "--D", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("IT_tilde"));
    assert_eq!(qkgr(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qkgr(&["pairing", "--n", "1", "--N", "2", "--class", "P1 + )"]).status.code(), Some(2));
    assert_eq!(qkgr(&["pairing", "--n", "2", "--N", "3", "--class", "P1"]).status.code(), Some(2));
    assert_eq!(qkgr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn pairing_values() {
    let out = |class: &str, n: &str, big_n: &str| {
        let o = qkgr(&["pairing", "--n", n, "--N", big_n, "--class", class]);
        assert!(o.status.success());
        String::from_utf8(o.stdout).unwrap()
    };
    assert_eq!(out("1", "1", "2"), "1\n");
    assert_eq!(out("P1^-1", "1", "2"), "2\n");
    assert!(out("P1*P2", "2", "4").trim().parse::<i64>().is_ok());
    let o = qkgr(&["pairing", "--n", "1", "--N", "2", "--class", "P1", "--equivariant", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["chi"], "0");
    assert!(v["equivariant"].is_string());
}

#[test]
fn verify_suites_and_outputs() {
    let o = qkgr(&["verify", "--suite", "recursion", "--n", "1", "--N", "2", "--D", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["all_pass"], true);
    let o = qkgr(&["verify", "--suite", "jackson", "--precision", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall time"));

    let dir = std::env::temp_dir().join(format!("qkgr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("diffeq.csv");
    let o = qkgr(&["verify", "--suite", "diffeq", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("instance,pass,detail\n"));
    std::fs::remove_dir_all(&dir).ok();

    let o = qkgr(&["verify", "--suite", "mirror", "--timing"]);
    assert!(json(&o).get("wall_time_s").is_some());
}

#[test]
fn jobs_do_not_change_reports() {
    let a = qkgr(&["verify", "--suite", "gamma", "--jobs", "1"]);
    let b = qkgr(&["verify", "--suite", "gamma", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = qkgr(&["verify", "--suite", "dongwen", "--n", "1", "--N", "3", "--l", "1", "--D", "2", "--seed", "9"]);
    let d = qkgr(&["verify", "--suite", "dongwen", "--n", "1", "--N", "3", "--l", "1", "--D", "2", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
    assert!(c.status.success());
}
