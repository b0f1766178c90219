use std::fs;
use std::path::Path;
use std::process::Command;

use sepack::graph::{generate_named, parse_edge_list, parse_graph6, random_cubic, to_graph6};
use serde_json::Value;

fn sepack(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sepack"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_sharp_example() {
    let (code, out, _) = sepack(&[
        "solve",
        "--family",
        "subdivided_k33",
        "--sequence",
        "1^2,2^3",
    ]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["status"], "unsat");
    assert_eq!(v["method"], "exact");
    assert_eq!(v["sequence"], serde_json::json!([1, 1, 2, 2, 2]));

    let (code, out, _) = sepack(&[
        "solve",
        "--family",
        "subdivided_k33",
        "--sequence",
        "1^2,2^4",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "sat");
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 6);
    assert_eq!(
        classes
            .iter()
            .map(|c| c.as_array().unwrap().len())
            .sum::<usize>(),
        10
    );
    assert!(v["nodes"].as_u64().is_some());
}

#[test]
fn solve_budget_and_pipeline() {
    let (code, out, _) = sepack(&[
        "solve",
        "--family",
        "petersen",
        "--sequence",
        "1^3",
        "--budget",
        "2",
    ]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["status"], "unknown");

    let (code, out, _) = sepack(&[
        "solve", "--family", "random", "--n", "40", "--seed", "9", "--method", "pipeline",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "sat");
    assert_eq!(v["method"], "pipeline");

    let (code, _, err) = sepack(&[
        "solve",
        "--family",
        "petersen",
        "--method",
        "pipeline",
        "--sequence",
        "1^3",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("1^2,2^4"));

    let (code, out, _) = sepack(&[
        "solve",
        "--family",
        "c6",
        "--sequence",
        "1,1",
        "--format",
        "tsv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("status\tsequence"));
    assert!(out.lines().nth(1).unwrap().starts_with("sat\t1^2\texact"));
}

#[test]
fn verify_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate_named("subdivided_k33").unwrap();
    let graph = write(dir.path(), "g.el", &g.to_edge_list());
    let (code, out, _) = sepack(&["solve", "--input", &graph, "--sequence", "1^2,2^4"]);
    assert_eq!(code, 0);
    let solved = json(&out);
    let good = write(
        dir.path(),
        "c.json",
        &serde_json::json!({"classes": solved["classes"]}).to_string(),
    );
    let (code, out, _) = sepack(&[
        "verify",
        "--input",
        &graph,
        "--sequence",
        "1^2,2^4",
        "--coloring",
        &good,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["violations"], serde_json::json!([]));

    // Move every edge into class 0: adjacent edges now share a matching class.
    let all: Vec<usize> = (0..g.m()).collect();
    let empty: Vec<Vec<usize>> = vec![vec![]; 5];
    let mut classes = vec![all];
    classes.extend(empty);
    let bad = write(
        dir.path(),
        "bad.json",
        &serde_json::json!({"classes": classes}).to_string(),
    );
    let (code, out, _) = sepack(&[
        "verify",
        "--input",
        &graph,
        "--sequence",
        "1^2,2^4",
        "--coloring",
        &bad,
    ]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    let violations = v["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations
        .iter()
        .all(|x| x["class"] == 0 && x["distance"] == 1 && x["required"] == 2));

    let partial = write(dir.path(), "partial.json", r#"{"classes": [[0, 1]]}"#);
    let (code, _, err) = sepack(&["verify", "--input", &graph, "--coloring", &partial]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn audit_reports() {
    let (code, out, _) = sepack(&["audit", "--family", "petersen", "--seed", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["stable"], true);
    assert_eq!(v["clean"], true);
    assert_eq!(v["lemmas"]["no_C1"]["holds"], true);
    assert_eq!(v["lemmas"]["switch_stable"], true);
    assert!(v["charges"]["net_total"].is_string());
    assert_eq!(v["objective"]["union_size"], 9);

    let dir = tempfile::tempdir().unwrap();
    let pair = write(dir.path(), "pair.json", r#"{"m1": [], "m2": []}"#);
    let (code, out, _) = sepack(&["audit", "--family", "k4", "--pair", &pair]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["clean"], false);
    assert_eq!(v["stable"], false);
    assert!(v["charges"].is_null());
    assert!(v["charge_error"].as_str().unwrap().contains("non-basic"));
    assert_eq!(v["components"][0]["kind"], "VIOLATION(cycle)");

    let bad_pair = write(dir.path(), "bad.json", r#"{"m1": [0, 1], "m2": []}"#);
    let (code, _, _) = sepack(&["audit", "--family", "k4", "--pair", &bad_pair]);
    assert_eq!(code, 2);
}

#[test]
fn gen_and_distance() {
    let (code, out, _) = sepack(&[
        "gen", "--family", "random", "--n", "12", "--seed", "5", "--format", "graph6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_graph6(out.trim()).unwrap(),
        random_cubic(12, 5).unwrap()
    );

    let (code, out, _) = sepack(&["gen", "--family", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_edge_list(&out).unwrap(),
        generate_named("petersen").unwrap()
    );

    let (code, out, _) = sepack(&[
        "gen", "--family", "random", "--n", "10", "--count", "3", "--format", "graph6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);

    let (code, out, _) = sepack(&["distance", "--family", "c6", "0", "5"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let g = generate_named("c6").unwrap();
    let want = g
        .edge_distance(sepack::EdgeId(0), sepack::EdgeId(5))
        .unwrap()
        .unwrap();
    assert_eq!(v["distance"], want);

    let dir = tempfile::tempdir().unwrap();
    let two = write(dir.path(), "two.el", "0 1\n2 3\n");
    let (code, out, _) = sepack(&["distance", "--input", &two, "0", "1"]);
    assert_eq!(code, 0);
    assert!(json(&out)["distance"].is_null());
    let (code, _, _) = sepack(&["distance", "--input", &two, "0", "7"]);
    assert_eq!(code, 2);
}

#[test]
fn batch_runs() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.g6", "");
    let (code, out, _) = sepack(&["batch", "--input", &empty]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["summary"]["graphs"], 0);

    let mut lines: Vec<String> = (0..9)
        .map(|s| to_graph6(&random_cubic(12, s).unwrap()))
        .collect();
    lines.insert(4, "this is not graph6".into());
    let file = write(dir.path(), "ten.g6", &lines.join("\n"));
    let (code, out, _) = sepack(&["batch", "--input", &file]);
    assert_eq!(code, 2);
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 10);
    assert_eq!(results[4]["status"], "error");
    assert!(results[4]["error"].is_string());
    assert_eq!(v["summary"]["sat"], 9);
    assert_eq!(v["summary"]["errors"], 1);
    for (i, r) in results.iter().enumerate() {
        assert_eq!(r["index"], i);
    }

    let (code, out, _) = sepack(&["batch", "--family", "random", "--n", "20", "--count", "100"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["summary"]["sat"], 100);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verified"] == true));

    let (code, out, _) = sepack(&[
        "batch", "--family", "random", "--n", "10", "--count", "4", "--method", "exact",
        "--format", "tsv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "batch", "--family", "random", "--n", "30", "--count", "12", "--seed", "77",
        ][..],
        &["audit", "--family", "random", "--n", "24", "--seed", "3"][..],
        &["solve", "--family", "random", "--n", "16", "--seed", "1"][..],
    ] {
        let a = sepack(args);
        let b = sepack(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(sepack(&["--help"]).0, 0);
    assert_eq!(sepack(&["--version"]).0, 0);
    assert_eq!(sepack(&[]).0, 2);
    assert_eq!(sepack(&["frobnicate"]).0, 2);
    assert_eq!(sepack(&["solve"]).0, 2);
    assert_eq!(sepack(&["solve", "--family", "nope"]).0, 2);
    assert_eq!(sepack(&["solve", "--family", "random"]).0, 2);
    assert_eq!(
        sepack(&["solve", "--family", "k4", "--sequence", "2,1"]).0,
        2
    );
    assert_eq!(sepack(&["solve", "--input", "/nonexistent/g.el"]).0, 2);
    let (code, _, err) = sepack(&["solve", "--family", "k4", "--input", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("either"));
}

#[test]
fn library_entry_point_matches_the_binary() {
    let args = [
        "sepack",
        "solve",
        "--family",
        "petersen",
        "--sequence",
        "1^3,2",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sepack::cli::run(args, &mut out, &mut err);
    let (bin_code, bin_out, _) = sepack(&args[1..]);
    assert_eq!(code, bin_code);
    assert_eq!(String::from_utf8(out).unwrap(), bin_out);
    assert!(err.is_empty());
}

#[test]
fn graph6_input_is_detected_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_cubic(14, 2).unwrap();
    let file = write(dir.path(), "g.g6", &format!("{}\n", to_graph6(&g)));
    let (code, out, _) = sepack(&["solve", "--input", &file, "--method", "pipeline"]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out)["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_array().unwrap().len())
            .sum::<usize>(),
        g.m()
    );
}
