use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn arrfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrfree"))
        .args(args)
        .output()
        .expect("run arrfree")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = arrfree(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

#[test]
fn chi_of_files_and_catalog() {
    let tangent = temp_file("vars: 3\n# xyz(x+y+z)\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n");
    let out = arrfree(&["chi", tangent.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("chi(t)  = t^3 - 4t^2 + 6t - 3"));

    let (_, v) = json(&["chi", "catalog:boolean:3"]);
    assert_eq!(v["chi"], "t^3 - 3t^2 + 3t - 1");
    assert_eq!(v["roots"], serde_json::json!(["1", "1", "1"]));

    let (_, v) = json(&["chi", "catalog:factor"]);
    assert_eq!(v["chi"], "t^3 - 8t^2 + 17t - 10");
    assert_eq!(v["roots"], serde_json::json!(["1", "2", "5"]));
}

#[test]
fn classify_verdicts_and_exit_codes() {
    let (code, v) = json(&["classify", "catalog:tangent"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "StrictPOG");
    assert_eq!(ints(&v["exponents"]), [1, 2, 2]);
    assert_eq!(v["level"], 2);
    assert_eq!(ints(&v["syzygy_degrees"]), [3]);
    assert_eq!(v["strict"], true);
    assert_eq!(v["bound"], 4);
    assert_eq!(v["hilbert_checked_to"], 8);

    let (code, v) = json(&["classify", "catalog:shi-b:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "Free");
    assert_eq!(ints(&v["exponents"]), [1, 4, 4]);

    let (code, v) = json(&["classify", "catalog:addnot"]);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "NeitherAtBound");
    assert_eq!(ints(&v["generator_degrees"]), [1, 3, 3, 3, 3, 3, 3]);
    assert!(v["syzygy_degrees"].as_array().unwrap().len() >= 2);
}

#[test]
fn bounds_are_echoed() {
    let (_, v) = json(&[
        "classify",
        "catalog:tangent",
        "--bound",
        "6",
        "--hilbert-to",
        "10",
    ]);
    assert_eq!(v["bound"], 6);
    assert_eq!(v["hilbert_checked_to"], 10);
    assert_eq!(v["verified_to"], 6);
}

#[test]
fn non_essential_exits_four() {
    let f = temp_file("vars: 3\n1 0 0\n0 1 0\n1 1 0\n");
    let out = arrfree(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not essential"));
}

#[test]
fn errors_exit_one() {
    let f = temp_file("vars: 3\n1 0 0\n1 x 0\n");
    let out = arrfree(&["chi", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = arrfree(&["triple", "catalog:tangent", "--index", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = arrfree(&["classify", "catalog:nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn derived_files_round_trip() {
    let out = arrfree(&["delete", "catalog:factor", "--index", "1"]);
    let text = stdout(&out);
    assert!(text.starts_with("# deletion of H_1: y"));
    let f = temp_file(&text);
    let (_, v) = json(&["chi", f.path().to_str().unwrap()]);
    assert_eq!(v["size"], 7);
    let again = stdout(&arrfree(&["catalog", "factor"]));
    let body: String = again
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let g = temp_file(&body);
    let (_, file) = json(&["delete", g.path().to_str().unwrap(), "--index", "1"]);
    let text_body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(file["file"], text_body.as_str());

    let (_, z) = json(&["ziegler", "catalog:shi-b:2", "--index", "0"]);
    assert_eq!(z["file"], "vars: 2\n1 0 | 2\n0 1 | 2\n1 -1 | 2\n1 1 | 2\n");

    let (_, r) = json(&["restrict", "catalog:tangent", "--index", "2"]);
    assert_eq!(r["size"], 3);
    assert_eq!(r["nvars"], 2);
}

#[test]
fn multiarrangement_classification() {
    let f = temp_file("vars: 2\n1 0 | 2\n0 1 | 2\n1 -1 | 2\n1 1 | 2\n");
    let (code, v) = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(ints(&v["exponents"]), [4, 4]);
}

#[test]
fn triples() {
    let (code, v) = json(&["triple", "catalog:boolean:3", "--index", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["triple"]["free"], serde_json::json!([true, true, true]));

    let (_, v) = json(&["triple", "catalog:factor", "--index", "1"]);
    assert_eq!(v["triple"]["deletion"]["verdict"], "StrictPOG");
    assert_eq!(v["triple"]["deletion"]["level"], 5);
    assert_eq!(v["triple"]["d"], 5);
    assert_eq!(v["combinatorial"]["predicted_free"], false);
}

#[test]
fn searches() {
    let (_, v) = json(&["filtration", "catalog:boolean:3"]);
    assert_eq!(v["ordering"].as_array().unwrap().len(), 3);
    let (_, v) = json(&["filtration", "catalog:tangent"]);
    assert!(v["ordering"].is_null());

    let (_, v) = json(&["scan", "catalog:factor"]);
    assert_eq!(v["all_hold"], true);

    let del = stdout(&arrfree(&["delete", "catalog:b3", "--index", "1"]));
    let f = temp_file(&del);
    let pool = temp_file("vars: 3\n0 1 0\n1 0 0\n");
    let (_, v) = json(&[
        "free-additions",
        f.path().to_str().unwrap(),
        "--pool",
        pool.path().to_str().unwrap(),
    ]);
    let adds = v["additions"].as_array().unwrap();
    assert_eq!(adds.len(), 1);
    assert_eq!(adds[0]["hyperplane"], "y");
    assert_eq!(adds[0]["size_gap"], 8);
    assert_eq!(v["unique_regime"], true);
    assert_eq!(v["filtered"], 1);
}

#[test]
fn catalog_listing() {
    let (_, v) = json(&["catalog"]);
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["boolean", "tangent", "factor", "b3", "addnot", "shi-b"]
    );
    let text = stdout(&arrfree(&["catalog", "tangent"]));
    assert!(text.contains("vars: 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n"));
}
