use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infoquot")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infoquot")).args(args).env(key, value).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

#[test]
fn validate_exit_codes_on_the_corpus() {
    let valid = ["running.mealy", "running.rel", "unbounded.rel", "embargo-k1.rel", "embargo-k4.rel", "embargo-k6.rel"];
    for name in valid {
        assert_eq!(code(&run(&["validate", &file(name)])), 0, "{name}");
    }
    for name in ["running-reflexive.rel", "running-transitive.rel", "running-recall.rel"] {
        assert_eq!(code(&run(&["validate", &file(name)])), 1, "{name}");
    }
}

#[test]
fn check_bounded_exit_codes() {
    assert_eq!(code(&run(&["check-bounded", &file("running.rel")])), 0);
    assert_eq!(code(&run(&["check-bounded", &file("embargo-k3.rel")])), 0);
    assert_eq!(code(&run(&["check-bounded", &file("unbounded.rel")])), 1);
    assert_eq!(code(&run(&["check-bounded", &file("running-recall.rel")])), 1);
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/file.rel"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.rel");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["validate", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(code(&run(&["from-mealy", &file("running.rel")])), 2);
    assert_eq!(code(&run(&["tree", &file("running.rel"), "--depth", "12"])), 2);
    assert_eq!(code(&run(&["tree", &file("running.rel"), "--depth", "8", "--max-depth", "9"])), 0);
}

#[test]
fn state_budget_comes_from_flag_or_environment() {
    let o = run(&["to-mealy", &file("embargo-k4.rel"), "--max-states", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget of 3"));
    let o = run_env(&["to-mealy", &file("embargo-k4.rel")], "INFOQUOT_MAX_STATES", "3");
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["to-mealy", &file("embargo-k4.rel")])), 0);
}

#[test]
fn partial_files_need_completion() {
    let text = std::fs::read_to_string(corpus("running.rel")).unwrap();
    let partial: String = text.lines().filter(|l| *l != "q3 b b -> q4").map(|l| format!("{l}\n")).collect();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("partial.rel");
    std::fs::write(&p, partial).unwrap();
    let p = p.to_str().unwrap();
    let o = run(&["validate", p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(b, b)"));
    assert_eq!(code(&run(&["validate", "--complete-with-sink", p])), 1);
}

#[test]
fn equivalence() {
    assert_eq!(code(&run(&["equiv", &file("running.rel"), &file("running.rel")])), 0);
    assert_eq!(code(&run(&["equiv", &file("running.mealy"), &file("running.rel")])), 0);
    let o = run(&["equiv", &file("running.rel"), &file("running-transitive.rel")]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("shortest distinguishing pair"));
    assert_eq!(code(&run(&["equiv", &file("running.rel"), &file("unbounded.rel")])), 2);
}

#[test]
fn outputs_are_written_and_reparsed() {
    let dir = tempfile::tempdir().unwrap();
    let min = dir.path().join("min.rel");
    assert_eq!(code(&run(&["minimize", &file("embargo-k3.rel"), "-o", min.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["equiv", min.to_str().unwrap(), &file("embargo-k3.rel")])), 0);
    let m = dir.path().join("m.mealy");
    assert_eq!(code(&run(&["to-mealy", &file("running.rel"), "-o", m.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["equiv", m.to_str().unwrap(), &file("running.rel")])), 0);
}

#[test]
fn dot_output() {
    let o = run(&["to-mealy", "--dot", &file("running.rel")]);
    let dot = String::from_utf8_lossy(&o.stdout);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"p2\" -> \"p2\""));
    assert!(dot.contains("\"p4\" -> \"p4\""));
    let o = run(&["tree", "--dot", "--depth", "2", &file("running.rel")]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("n0 -> n1;"));
}

#[test]
fn json_reports_follow_the_schema() {
    let v = json(&run(&["validate", "--json", &file("running-reflexive.rel")]));
    assert_eq!(v["formatVersion"], 1);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["valid"], false);
    assert_eq!(v["synchronous"], true);
    for p in ["reflexive", "symmetric", "transitive", "perfect-recall"] {
        assert!(v["properties"][p]["holds"].is_boolean(), "{p}");
    }
    assert_eq!(v["properties"]["reflexive"]["counterexample"]["kind"], "reflexive");
    assert_eq!(v["properties"]["reflexive"]["counterexample"]["histories"][0], "b");

    let v = json(&run(&["check-bounded", "--json", &file("embargo-k2.rel")]));
    assert_eq!((v["bounded"].clone(), v["bound"].clone(), v["maxClique"].clone()), (true.into(), 4.into(), 2.into()));

    let v = json(&run(&["check-bounded", "--json", &file("unbounded.rel")]));
    assert_eq!(v["bounded"], false);
    for key in ["kind", "p", "q", "prefix", "cycle", "suffix"] {
        assert!(v["witness"][key].is_string(), "{key}");
    }
    assert!(v["stateMap"].as_array().unwrap().iter().all(|e| e["input"].is_string() && e["minimal"].is_string()));

    let v = json(&run(&["equiv", "--json", &file("running.rel"), &file("running-recall.rel")]));
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["pair"].as_array().unwrap().len(), 2);

    let v = json(&run(&["to-mealy", "--json", &file("running.rel")]));
    assert_eq!((v["kind"].clone(), v["states"].clone()), ("mealy".into(), 4.into()));
    assert!(v["text"].as_str().unwrap().starts_with("kind mealy"));

    let v = json(&run(&["oracle-partition", "--json", "--depth", "2", &file("running.rel")]));
    assert_eq!(v["classes"][2], serde_json::json!([["aa", "ab", "bb"], ["ba"]]));

    let v = json(&run(&["tree", "--json", "--depth", "1", &file("running.rel")]));
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 2);
    assert_eq!(nodes[1]["parent"], 0);
    assert_eq!(nodes[1]["degree"], 2);
}
