use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_castelbound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("castelbound-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn walls_line_bundle_family() {
    let v = json_ok(&["walls", "--d", "4", "--n", "1", "--family", "line-bundles", "--k-max", "3"]);
    let walls = v["walls"].as_array().unwrap();
    let k2 = walls.iter().find(|w| w["k"] == 2).expect("k = 2 wall");
    assert_eq!(k2["wall"]["center"], "-3");
    assert_eq!(k2["wall"]["radius_sq"], "1");
    assert_eq!(k2["rightmost"], "-2");
    let ks: Vec<i64> = walls.iter().map(|w| w["k"].as_i64().unwrap()).collect();
    assert!(ks.windows(2).all(|p| p[0] <= p[1]), "ordered by k: {ks:?}");
}

#[test]
fn walls_accept_unknown_ch3() {
    let v = json_ok(&["walls", "--ch", "1,0,-6,*", "--family", "line-bundles", "--k-max", "2"]);
    assert_eq!(v["class"]["c3_known"], false);
    assert!(!v["walls"].as_array().unwrap().is_empty());
}

#[test]
fn walls_write_svg() {
    let path = scratch("walls.svg");
    let out = run(&["walls", "--d", "6", "--g", "2", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("class=\"wall\""));
}

#[test]
fn certify_quintic_table_csv() {
    let out = run(&["certify", "--target", "x5", "--max-d", "15", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let bounds: Vec<i64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(bounds, [0, 0, 1, 3, 6, 6, 7, 9, 12, 16, 17, 19, 22, 26, 31]);
}

#[test]
fn certify_explain_has_anchors() {
    let v = json_ok(&["certify", "--target", "x5", "--d", "9", "--explain"]);
    let text = v.to_string();
    assert!(text.contains("because:"), "{text}");
}

#[test]
fn constants_no_wall_example() {
    let v = json_ok(&["constants", "--n", "2", "--l", "4", "--only", "no-wall"]);
    let s = v.to_string();
    assert!(s.contains("\"value\":\"11\""), "{s}");
}

#[test]
fn vanish_gv_shows_inequality() {
    let v = json_ok(&["vanish", "gv", "--n", "5", "--m", "1", "--NH", "3", "--g", "40", "--d", "15"]);
    assert_eq!(v["inequality"], "g > d²/10 + d/2 + 1 \u{2212} ε(d,5)");
    assert!(v["vanishes"].is_boolean());
}

#[test]
fn bound_bmt_csv() {
    let out = run(&["bound", "--kind", "bmt", "--d", "7", "--b0", "-3/2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "d,value,floor\n7,221/18,12\n");
}

#[test]
fn gvpt_files_round_trip() {
    let gv = scratch("gv.csv");
    fs::write(&gv, "g,d,value\n0,1,2875\n0,2,609250\n1,3,609250\n").unwrap();
    let out = run(&["gvpt", "to-pt", "--input", gv.to_str().unwrap(), "--window=-9..11", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let pt = scratch("pt.csv");
    fs::write(&pt, &out.stdout).unwrap();
    let out = run(&["gvpt", "to-gv", "--input", pt.to_str().unwrap(), "--window=-9..11", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    for row in ["0,1,2875", "0,2,609250", "1,3,609250"] {
        assert!(text.contains(row), "{text}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["constants", "--n", "3", "--l", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["bound", "--kind", "epsilon", "--d", "x", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["certify", "--target", "x5", "--d", "3", "--script", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Parse");
}

#[test]
fn domain_errors_exit_3() {
    let out = run(&["certify", "--target", "x5", "--d", "16"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "OutOfCertifiedRange");
}

#[test]
fn unknown_target_is_config_error() {
    let out = run(&["certify", "--target", "no-such-target", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Config");
}

#[test]
fn config_dir_lookup() {
    let dir = std::env::temp_dir().join(format!("castelbound-cfg-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("tiny.toml"), "name = \"tiny\"\nn = 5\nambient_dim = 4\nd1 = 3\n").unwrap();
    let out = bin().env("CASTELBOUND_CONFIG_DIR", &dir).args(["certify", "--target", "tiny", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("d,bound"));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
