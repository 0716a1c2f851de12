use std::io::Write;
use std::path::PathBuf;

use serde_json::Value;
use soberlab::cli::run_command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_command(std::iter::once("soberlab").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).expect("stdout is JSON"))
}

#[test]
fn info_on_sierpinski() {
    let (code, v) = json(&["info", &data("sierpinski.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "OK");
    assert_eq!(v["tool"], "soberlab");
    let props = &v["sections"]["properties"];
    assert_eq!(props["t0"], true);
    assert_eq!(props["sober"], true);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn json_round_trips() {
    for args in [vec!["info", "SIERP"], vec!["sobrify", "--verify", "VEE"], vec!["rclass", "VEE"], vec!["hm", "SIERP"]]
    {
        let args: Vec<String> = args
            .into_iter()
            .map(|a| match a {
                "SIERP" => data("sierpinski.json"),
                "VEE" => data("vee.json"),
                other => other.to_string(),
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, v) = json(&refs);
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn broken_file_is_rejected() {
    let (code, v) = json(&["validate", &data("broken.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "ERROR");
    assert!(v["error"].as_str().unwrap().contains("{a,b}"), "{}", v["error"]);
}

#[test]
fn indiscrete_sobrification_sides() {
    let (code, v) = json(&["sobrify", "--verify", &data("indiscrete2.json")]);
    assert_eq!(code, 0);
    let clauses = v["sections"]["sobrification"]["verification"]["clauses"].as_array().unwrap();
    let side = |k: u64| clauses.iter().find(|c| c["clause"] == k).unwrap()["sides"].clone();
    assert_eq!(side(7), serde_json::json!([false, false, false]));
    assert_eq!(side(8), serde_json::json!([true, true, true]));
}

#[test]
fn user_file_via_tempfile() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"name":"chain3","points":["a","b","c"],"opens":[[],["c"],["b","c"],["a","b","c"]]}}"#).unwrap();
    let path = f.path().display().to_string();
    let (code, v) = json(&["rclass", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"]["rclass"]["equal"], true);
    let (code, out, _) = run(&["info", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("chain3"));
}

#[test]
fn missing_and_malformed_files() {
    assert_eq!(run(&["info", "/nonexistent/space.json"]).0, 1);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "not json").unwrap();
    assert_eq!(run(&["info", &f.path().display().to_string()]).0, 1);
}

#[test]
fn symbolic_commands() {
    let (code, v) = json(&["symbolic", "cofinite", "--counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"]["symbolic"]["counterexample"]["record"]["verified"], true);

    let (code, v) = json(&["symbolic", "upper", "--query", "saturation", "{3}"]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"]["symbolic"]["query"]["verdict"]["answer"]["value"], "[3,∞)");

    let (code, v) = json(&["symbolic", "upper", "--rclass", "[3,inf)"]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"]["symbolic"]["rclass"]["membership"]["member"], false);
    assert_eq!(v["sections"]["symbolic"]["rclass"]["summary"]["quasisober"], false);

    let (code, v) = json(&["symbolic", "cofinite", "--rclass", "{}"]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"]["symbolic"]["rclass"]["membership"]["member"], true);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["symbolic", "cofinite"]).0, 1);
    assert_eq!(run(&["symbolic", "circle", "--counterexample"]).0, 1);
    assert_eq!(run(&["symbolic", "upper", "--query", "is_round", "{1}"]).0, 1);
    assert_eq!(run(&["symbolic", "upper", "--rclass", "{1,"]).0, 1);
    assert_eq!(run(&["census", "--max-points", "9"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn small_census() {
    let (code, v) = json(&["census", "--max-points", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    let counts: Vec<u64> =
        v["sections"]["census"].as_array().unwrap().iter().map(|r| r["topology_count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 1, 4, 29]);
}
