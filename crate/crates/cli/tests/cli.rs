use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-lab"))
        .current_dir(examples())
        .env_remove("RAMSEY_LAB_THREADS")
        .args(args)
        .output()
        .unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), json)
}

#[test]
fn help_for_every_subcommand() {
    let subs: &[&[&str]] = &[
        &[],
        &["arrows"],
        &["minimal"],
        &["blowup-ramsey"],
        &["girth"],
        &["check-3cc"],
        &["recolour"],
        &["verify"],
        &["unavoidable"],
        &["unavoidable", "enumerate"],
        &["unavoidable", "family"],
        &["unavoidable", "detect"],
        &["unavoidable", "drc"],
        &["unavoidable", "pipeline"],
        &["unavoidable", "experiment"],
        &["trees"],
        &["trees", "copies"],
        &["trees", "coherent"],
        &["trees", "lemma32"],
        &["trees", "table"],
    ];
    for sub in subs {
        let mut args = sub.to_vec();
        args.push("--help");
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"), "{args:?}");
    }
}

#[test]
fn envelope_fields() {
    let (code, r) = report(&["--seed", "9", "arrows", "--graph", "k6.txt", "--target", "k3.txt"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["subcommand"], "arrows");
    assert_eq!(r["seeds"]["seed"], 9);
    assert_eq!(r["inputs"]["pair"]["graph"], "k6.txt");
    assert_eq!(r["result"]["arrows"], true);
    assert!(r["elapsed_ms"].as_f64().unwrap() >= 0.0);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["schema_version", "subcommand", "inputs", "seeds", "result", "elapsed_ms"]);
}

#[test]
fn arrows_witness_is_written_and_triangle_free() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let (code, r) = report(&["arrows", "--graph", "k5.txt", "--target", "k3.txt", "--witness-out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["arrows"], false);
    let triples: Vec<(usize, usize, u8)> = serde_json::from_value(r["result"]["witness"].clone()).unwrap();
    assert_eq!(triples.len(), 10);
    let colour = |a: usize, b: usize| triples.iter().find(|t| (t.0, t.1) == (a.min(b), a.max(b))).unwrap().2;
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                assert!(!(colour(a, b) == colour(a, c) && colour(a, b) == colour(b, c)));
            }
        }
    }
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().filter(|l| !l.trim().is_empty()).count(), 10);
}

#[test]
fn exit_codes() {
    // ground graph does not arrow the pattern
    let (code, r) = report(&["blowup-ramsey", "--graph", "k5.txt", "--target", "k3.txt", "-t", "2"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "precondition");

    let (code, r) = report(&["minimal", "--graph", "k6.txt", "--target", "k3.txt", "--node-budget", "1"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "inconclusive");

    let (code, r) = report(&["arrows", "--graph", "missing.txt", "--target", "k3.txt"]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("missing.txt"));

    let (code, r) = report(&["arrows", "--graph", "f-table.txt", "--target", "k3.txt"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "input");

    assert_eq!(run(&["arrows", "--graph", "k5.txt"]).status.code(), Some(2));
    assert_eq!(run(&["--threads", "0", "check-3cc", "--graph", "k4.txt"]).status.code(), Some(2));
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["-o", path.to_str().unwrap(), "check-3cc", "--graph", "c4.txt"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["result"]["three_chromatically_connected"], false);

    let out = run(&["--format", "text", "check-3cc", "--graph", "k4.txt"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("three_chromatically_connected: true"));
}

#[test]
fn girth_runs() {
    let (_, r) = report(&["girth", "--graph", "k4.txt", "--target", "k3.txt", "-s", "2"]);
    assert_eq!(r["result"]["girth"]["finite"], 3);
    assert_eq!(r["result"]["preconditions"]["girth_ok"], false);
    let (_, r) = report(&["girth", "--graph", "f2.txt", "--target", "k3.txt"]);
    assert_eq!(r["result"]["girth"], "infinite");
    let (_, r) = report(&["girth", "--hypergraph", "two-overlap.txt"]);
    assert_eq!(r["result"]["girth"]["finite"], 2);
    assert_eq!(r["result"]["linear"], false);
}

#[test]
fn recolour_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let blown = dir.path().join("blown.txt");
    let (code, r) = report(&[
        "recolour", "--graph", "fan.txt", "--edge", "0 1", "--pivot", "0", "--colouring",
        "fan-colouring.txt", "-s", "4", "--blown-out", blown.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["certificate"]["ok"], true);
    assert_eq!(r["result"]["verification"]["ok"], true);
    assert_eq!(r["result"]["claim"]["ok"], true);
    let (code, v) = report(&["verify", "--graph", "fan.txt", "-s", "4", "--colouring", blown.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["copies"].as_array().unwrap().len(), 0);

    // an all-red K_3[2] is itself a monochromatic copy
    let (_, v) = report(&["verify", "--graph", "k3.txt", "-s", "2", "--colouring", "k3x2-red.txt"]);
    assert_eq!(v["result"]["ok"], false);
}

#[test]
fn unavoidable_runs() {
    let (_, r) = report(&["unavoidable", "enumerate", "-r", "2", "--quotient-colours"]);
    assert_eq!(r["result"]["count"], 4);
    assert_eq!(r["result"]["colour_free_classes"], 2);
    let (_, r) = report(&["unavoidable", "family", "-r", "2", "-t", "2"]);
    assert_eq!(r["result"]["max_vertices"], 4);
    let (_, r) = report(&["unavoidable", "detect", "--clique", "clique6.txt"]);
    assert_eq!(r["result"]["found"], true);
    let (_, r) = report(&["unavoidable", "pipeline", "--random", "96", "--seed", "1"]);
    if r["result"]["found"] == true {
        assert_eq!(r["result"]["detection_confirms"], true);
    }
    let (_, r) = report(&["unavoidable", "drc", "--graph", "k6.txt", "-k", "2", "-t", "2"]);
    assert_eq!(r["result"]["found"], r["result"]["verified"].as_bool().unwrap_or(false));
    let (code, r) = report(&["unavoidable", "experiment", "-n", "64", "--min-edges", "1536"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "config");
    let (code, _) = report(&["unavoidable", "detect", "--clique", "clique6.txt", "-r", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn trees_runs() {
    let (_, r) = report(&["trees", "copies", "--tree", "p3.txt", "--graph", "k3.txt", "--colouring", "k3-partial.txt", "--colour", "1"]);
    assert_eq!(r["result"]["count"], 1);
    let (_, r) = report(&[
        "trees", "coherent", "--graph", "k3.txt", "--colouring", "k3-partial.txt", "--multiplicities", "2,2,2",
        "--f-table", "f-table.txt", "--blown-colouring", "k3x2-red.txt",
    ]);
    assert_eq!(r["result"]["coherent"], true);
    let (_, r) = report(&["trees", "lemma32", "--instance", "lemma-star.json"]);
    assert_eq!(r["result"]["witness"], serde_json::json!([1, 2]));
    let (_, r) = report(&["trees", "table", "--graphs", "k3.txt", "k2.txt", "--tree", "p3.txt", "-t", "1"]);
    assert_eq!(r["result"]["rows"][0]["value"], 1);
    assert_eq!(r["result"]["rows"][1]["status"], "not_applicable");
    let (code, _) = report(&["trees", "copies", "--tree", "k3.txt", "--graph", "k4.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey-lab"))
        .current_dir(examples())
        .env("RAMSEY_LAB_THREADS", "2")
        .args(["unavoidable", "experiment", "-n", "30", "--min-edges", "150", "--trials", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["inputs"].get("threads").is_none());
}
