use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn groves(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groves")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = groves(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn grove_prob_from_colors() {
    let g = fixture("grid6.json");
    let v = json_of(&["grove-prob", "--colors", "R=1-2,G=3-4,B=5-6", path(&g)]);
    assert_eq!(v, serde_json::json!({ "partition": "16|23|45", "pu": "33/62" }));
    let dual = json_of(&["grove-prob", "--partition", "16|23|45", "--via-dual", path(&g)]);
    assert_eq!(dual["pu"], v["pu"]);
}

#[test]
fn grove_prob_matches_enumeration() {
    let g = fixture("grid6.json");
    let table = json_of(&["enumerate", path(&g)]);
    let z = |p: &str| groves::linalg::parse_rational(table["groves"][p].as_str().unwrap()).unwrap();
    assert_eq!(z("16|23|45") / z("1|2|3|4|5|6"), groves::linalg::rat(33, 62));
}

#[test]
fn response_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture("grid6.json");
    let out = groves(&["response", path(&g)]);
    let r = dir.path().join("response.json");
    std::fs::write(&r, &out.stdout).unwrap();
    let from_file = json_of(&["grove-prob", "--colors", "R=1-2,G=3-4,B=5-6", r.to_str().unwrap()]);
    assert_eq!(from_file["pu"], "33/62");
    let a = json_of(&["resistance", path(&g)]);
    let b = json_of(&["resistance", r.to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn reconstruct_recovers_conductances() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture("sigma4.json");
    let r = dir.path().join("r.json");
    std::fs::write(&r, groves(&["response", path(&g)]).stdout).unwrap();
    let v = json_of(&["reconstruct", r.to_str().unwrap()]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["network"], original);
    assert_eq!(v["edges"][0]["chord"], serde_json::json!([1, 2]));
}

#[test]
fn project_prints_six_terms() {
    let v = json_of(&["project", "--partition", "13|24"]);
    let terms: Vec<(String, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["coefficient"].as_str().unwrap().into(), t["partition"].as_str().unwrap().into()))
        .collect();
    let want = [("1", "1|234"), ("-1", "12|34"), ("1", "123|4"), ("1", "124|3"), ("1", "134|2"), ("-1", "14|23")];
    assert_eq!(terms, want.map(|(c, p)| (c.to_string(), p.to_string())));
}

#[test]
fn carroll_speyer_seven() {
    let v = json_of(&["carroll-speyer", "--N", "7"]);
    assert_eq!(v, serde_json::json!({ "count": "531441", "forests": "135418115000" }));
}

#[test]
fn double_dimer_probability() {
    let v = json_of(&["dd-prob", "--colors", "R=1-2,G=3-4,B=5-6", path(&fixture("bipartite.json"))]);
    assert_eq!(v["pairing"], "16|23|45");
    assert_eq!(v["pr"], "2132/25921");
}

#[test]
fn minors_agree() {
    let v = json_of(&["minors", "--a", "1,2", "--b", "4,5", "--c", "3", path(&fixture("grid6.json"))]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["det"], v["grove_sum"]);
}

#[test]
fn transform_keeps_response() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture("star.json");
    let t = dir.path().join("t.json");
    std::fs::write(&t, groves(&["transform", "--move", "series:5", path(&g)]).stdout).unwrap();
    assert_eq!(json_of(&["response", path(&g)]), json_of(&["response", t.to_str().unwrap()]));
    let t2 = dir.path().join("t2.json");
    std::fs::write(&t2, groves(&["transform", "--move", "wye-delta:4", t.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(json_of(&["response", path(&g)]), json_of(&["response", t2.to_str().unwrap()]));
}

#[test]
fn selftest_is_reproducible() {
    let a = groves(&["selftest", "--seed", "11", "--instances", "2"]);
    let b = groves(&["selftest", "--seed", "11", "--instances", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(groves(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(groves(&["response", "/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(groves(&["project", "--partition", "1|x"]).status.code(), Some(2));
    assert_eq!(groves(&["carroll-speyer", "--N", "1"]).status.code(), Some(3));
    let g = fixture("grid6.json");
    assert_eq!(groves(&["grove-prob", "--colors", "R=1-5,G=6-6", path(&g)]).status.code(), Some(3));
}
