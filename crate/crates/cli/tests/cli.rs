use std::process::{Command, Output};

use serde_json::Value;

fn gigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gigraph"))
        .args(args)
        .env_remove("GIGRAPH_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = gigraph(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn text(args: &[&str]) -> String {
    let out = gigraph(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_petersen() {
    let v = json(&["classify", "5", "1", "2"]);
    assert_eq!(v["cayley"]["verdict"], "No");
    assert_eq!(v["edge_transitive"]["value"], true);
    assert_eq!(v["aut_order"]["order"], 120);
}

#[test]
fn classify_with_oracle() {
    let v = json(&["classify", "7", "1", "2", "3", "--oracle"]);
    assert_eq!(v["oracle"]["oracle_order"], 42);
    assert_eq!(v["oracle"]["oracle_cayley"], true);
    assert_eq!(v["oracle"]["mismatches"], serde_json::json!([]));
}

#[test]
fn aut_order_24_1_5() {
    let v = json(&["aut", "24", "1", "5"]);
    assert_eq!(v["order"], 288);
    assert_eq!(v["case"], "Sporadic");
    let v = json(&["aut", "6", "2", "2", "--verify"]);
    assert_eq!((v["order"].clone(), v["agrees"].clone()), (288.into(), true.into()));
}

#[test]
fn aut_elements() {
    let v = json(&["aut", "5", "1", "2", "--elements"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 120);
}

#[test]
fn build_formats() {
    let dot = text(&["build", "6", "2", "2", "--format", "dot"]);
    let vertices = dot.lines().filter(|l| l.trim_end().ends_with("\";")).count();
    assert_eq!(vertices, 12);
    assert!(dot.contains("kind=spoke"));

    let edges = text(&["build", "5", "1", "2", "--format", "edges"]);
    assert_eq!(edges.lines().count(), 15);

    let v = json(&["build", "7", "1", "2", "3"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 21);
    assert_eq!(v["edges"].as_array().unwrap().len(), 42);
}

#[test]
fn build_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = gigraph(&["build", "5", "1", "2", "--format", "edges", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 15);
}

#[test]
fn canon_output() {
    let v = json(&["canon", "12", "7", "-9", "5"]);
    assert_eq!(v["input"], serde_json::json!([7, -9, 5]));
    assert_eq!(v["standard"], serde_json::json!([3, 5, 5]));
    assert_eq!(v["canonical"], serde_json::json!([1, 1, 3]));
}

#[test]
fn census_csv() {
    let csv = text(&["census", "--n", "5..7", "--t", "3", "--connected-only"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "\"n\",\"t\",\"J\",\"canonical\",\"d\",\"order\",\"case\",\"ET\",\"VT\",\"Cayley\",\"rule\""
    );
    let row = csv.lines().find(|l| l.starts_with("7,3,\"1 2 3\"")).unwrap();
    assert!(row.contains(",42,"));
    assert!(row.contains("\"Yes\""));
    assert_eq!(csv, text(&["census", "--n", "5..7", "--t", "3", "--connected-only"]));
}

#[test]
fn census_two_classes_for_n5() {
    let v = json(&["census", "--n", "5", "--t", "2", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["J"], serde_json::json!([1, 1]));
    assert_eq!(rows[0]["class_size"], 2);
}

#[test]
fn census_verify_is_clean() {
    let out = gigraph(&["census", "--n", "3..9", "--t", "2", "--verify"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("0 mismatches, 0 findings"), "{err}");
    let header = String::from_utf8(out.stdout).unwrap().lines().next().unwrap().to_string();
    assert!(header.ends_with("\"mismatches\""));
}

#[test]
fn layout_unit_distance() {
    let v = json(&["layout", "7", "1", "2", "3", "--check-unit"]);
    assert!(v["max_abs_dev_from_unit"].as_f64().unwrap() < 1e-9);
    let v = json(&["layout", "5", "1", "2", "--check-unit"]);
    assert!(v["max"].as_f64().unwrap() > v["min"].as_f64().unwrap());
}

#[test]
fn layout_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.svg");
    let p = path.to_str().unwrap();
    assert!(gigraph(&["layout", "7", "1", "2", "3", "--svg", p]).status.success());
    let doc = std::fs::read_to_string(&path).unwrap();
    let xml = roxmltree::Document::parse(&doc).unwrap();
    assert_eq!(xml.descendants().filter(|n| n.has_tag_name("circle")).count(), 21);
    assert_eq!(xml.descendants().filter(|n| n.has_tag_name("line")).count(), 42);
}

#[test]
fn layout_radii() {
    let v = json(&["layout", "5", "1", "2", "--radii", "2,1"]);
    assert_eq!(v["radii"], serde_json::json!([2.0, 1.0]));
    assert_eq!(gigraph(&["layout", "5", "1", "2", "--radii", "2"]).status.code(), Some(1));
}

#[test]
fn oracle_subcommands() {
    let v = json(&["oracle", "aut", "3", "1", "1", "1"]);
    assert_eq!(v["order"], 72);
    let v = json(&["oracle", "iso", "12", "2,3,5", "1,2,3"]);
    assert_eq!(v["isomorphic"], true);
    let v = json(&["oracle", "iso", "5", "1,2", "1,1"]);
    assert_eq!(v["isomorphic"], false);
    let v = json(&["oracle", "cayley", "8", "1", "3"]);
    assert_eq!(v["regular_subgroup"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 16);
    let v = json(&["oracle", "girth", "7", "1", "2", "3"]);
    assert_eq!((v["girth"].clone(), v["has_4_cycle"].clone()), (3.into(), false.into()));
}

#[test]
fn exit_codes() {
    assert_eq!(gigraph(&["classify", "8", "4"]).status.code(), Some(1));
    assert_eq!(gigraph(&["classify"]).status.code(), Some(1));
    assert_eq!(gigraph(&["census", "--n", "x..9", "--t", "2"]).status.code(), Some(1));
    assert_eq!(gigraph(&["--help"]).status.code(), Some(0));
    let out = gigraph(&["oracle", "aut", "12", "4", "4", "4", "4", "--max-vertices", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_gigraph"))
        .args(["oracle", "girth", "7", "1", "2", "3"])
        .env("GIGRAPH_MAX_VERTICES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(gigraph(&["census", "--n", "3..300", "--t", "8"]).status.code(), Some(2));
}
