use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn su3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su3")).args(args).env_remove("SU3_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
}

#[test]
fn group_reports_for_catalog_names() {
    let o = su3(&["group", "--name", "fr162x4"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(field(&t, "order"), Some("648"));
    assert_eq!(field(&t, "two_sylow"), Some("D4"));
    assert!(field(&t, "sylow").unwrap().split(' ').any(|p| p == "3:4"));

    let t = stdout(&su3(&["group", "--name", "sigma216x3"]));
    assert_eq!(field(&t, "order"), Some("648"));
    assert_eq!(field(&t, "two_sylow"), Some("Q8"));

    let t = stdout(&su3(&["group", "--name", "c9-1-1"]));
    assert_eq!(field(&t, "order"), Some("81"));
    assert_eq!(field(&t, "two_sylow"), Some("n/a"));
}

#[test]
fn group_json_and_determinism() {
    let a = su3(&["group", "--name", "fr162", "--json"]);
    let b = su3(&["group", "--name", "fr162", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["order"], 162);
    assert_eq!(v["sylow_counts"]["3"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(su3(&["group", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(su3(&["group", "--name", "fr162x4", "--cap", "100"]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_su3"))
        .args(["group", "--name", "fr162"])
        .env("SU3_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(su3(&["verify", "--suite", "eq999"]).status.code(), Some(2));
    assert_eq!(su3(&["group", "--name", "fr162", "--conductor", "100"]).status.code(), Some(2));
    assert_eq!(su3(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_lines_and_json() {
    let o = su3(&["verify", "--suite", "eq21"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "eq21\tpass\th3 c18 h3^-1 = c18^10 c6^7\nsummary\t1 passed\t0 failed\n");

    let o = su3(&["verify", "--suite", "thm6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["items"][0]["id"], "thm6");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = su3(&["verify", "--suite", "lemma14", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn verify_selects_by_family_and_prefix() {
    let t = stdout(&su3(&["verify", "--suite", "prop"]));
    let ids: Vec<&str> =
        t.lines().filter(|l| !l.starts_with("summary")).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(ids, ["prop1", "prop2", "prop6"]);
    let o = su3(&["verify", "--suite", "thm14"]);
    let t = stdout(&o);
    assert!(t.lines().filter(|l| !l.starts_with("summary")).all(|l| l.starts_with("thm14.")));
    assert!(t.contains("thm14.ii\tpass"));
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fr162.json");
    let p = path.to_str().unwrap();
    assert!(su3(&["export", "--name", "fr162", "--out", p]).status.success());
    let o = su3(&["import", p]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "imported\tfr162\t162\n");

    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let gens = dir.path().join("gens.json");
    fs::write(&gens, serde_json::to_string(&v["generators"]).unwrap()).unwrap();
    let t = stdout(&su3(&["group", "--gens", gens.to_str().unwrap()]));
    assert_eq!(field(&t, "order"), Some("162"));
}

#[test]
fn export_d18_holds_every_element() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d18.json");
    assert!(su3(&["export", "--name", "d18-1-1-2-1-1", "--out", path.to_str().unwrap()]).status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 648);
    assert_eq!(v["words"].as_array().unwrap().len(), 648);
}

#[test]
fn import_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    assert!(su3(&["export", "--name", "fr162", "--out", p]).status.success());
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();

    let mut scaled = v.clone();
    // doubling one entry's coefficients leaves the unitary group
    for c in scaled["generators"][0]["entries"][0].as_array_mut().unwrap() {
        c[0] = Value::from(c[0].as_i64().unwrap() * 2);
    }
    fs::write(&path, scaled.to_string()).unwrap();
    let o = su3(&["import", p]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));

    v["order"] = Value::from(7);
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(su3(&["import", p]).status.code(), Some(1));

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(su3(&["import", p]).status.code(), Some(2));
    assert_eq!(su3(&["import", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn catalog_and_fusion_commands() {
    let t = stdout(&su3(&["catalog", "list"]));
    for name in ["fr162", "fr162x4", "d18-1-1-2-1-1", "d9-1-1-2-1-1", "sigma216x3"] {
        assert!(t.lines().any(|l| l.split('\t').next() == Some(name)), "{name}");
    }
    let t = stdout(&su3(&["fusion", "--derive-fum"]));
    assert!(t.starts_with("derived\n[0, 0, 1]\n[0, 1, 0]\n[1, 0, 0]\n"));
    let t = stdout(&su3(&["fusion", "--symbols"]));
    assert_eq!(t.lines().filter(|l| l.ends_with("coefficient 1")).count(), 3);
    assert_eq!(t.lines().filter(|l| l.starts_with("delta\t")).count(), 5);
    assert!(t.lines().any(|l| l.starts_with("tet\t2 2 2 2 2 2\t0\t")));
    let t = stdout(&su3(&["fusion", "--derive-fum"]));
    assert!(t.ends_with("matches_fum\ttrue\n"));
}
