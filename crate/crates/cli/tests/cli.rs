use std::path::PathBuf;

use clap::Parser;
use serde_json::Value;
use troproots::graph::samples::{single_loop, theta};
use troproots::graph::GraphJson;
use troproots_cli::{load_graph, render, run, Cli, RunConfig};

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("troproots-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn invoke(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["troproots"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).unwrap();
    match RunConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => (troproots_cli::exit_code(&e), troproots_cli::error_json(&e)),
    }
}

fn loop_file() -> PathBuf {
    write(
        "loop.json",
        &serde_json::to_string(&GraphJson::from_graph(&single_loop())).unwrap(),
    )
}

#[test]
fn torsion_on_loop() {
    let f = loop_file();
    let (code, out) = invoke(&["torsion", "--graph", f.to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out["classes"].as_array().unwrap().len(), 2);
    assert_eq!(out["divisible_count"], 1);
    assert_eq!(out["classes"][0]["residues"][0], 0);
    assert_eq!(out["classes"][0]["divisible"], true);
}

#[test]
fn tree_has_no_higher_parts() {
    let f = write(
        "tree.json",
        r#"{"vertices":[{"id":0,"genus":1},{"id":1,"genus":1}],
            "legs":[{"i":1,"vertex":0,"twist":1}],
            "edges":[{"id":0,"from":0,"to":1,"length":["1"]}],"base_rank":1}"#,
    );
    let (code, out) = invoke(&["spin-dr", "--graph", f.to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 0, "{out}");
    let pd = &out["classes"][0]["P_d"];
    assert_eq!(pd["0"]["1"], "1/1");
    assert_eq!(pd["1"], serde_json::json!({}));
    assert_eq!(pd["2"], serde_json::json!({}));
}

#[test]
fn verify_reports_the_two_failing_suites() {
    let f = loop_file();
    let (code, out) = invoke(&["verify", "--graph", f.to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 3);
    let failing: Vec<&str> = out["suites"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["passed"] == false)
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["shift_law", "independence"]);
}

#[test]
fn errors_carry_field_paths() {
    let f = write(
        "bad.json",
        r#"{"vertices":[{"id":0}],"edges":[{"id":0,"from":0,"to":0,"length":["1","x"]}],"base_rank":2}"#,
    );
    let (code, out) = invoke(&["homology", "--graph", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out["error"]["path"], "edges[0].length[1]");

    let f = write(
        "extra.json",
        r#"{"vertices":[],"edges":[],"base_rank":1,"colour":1}"#,
    );
    let (code, out) = invoke(&["homology", "--graph", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out["error"]["kind"], "input");

    let f = loop_file();
    let (code, out) = invoke(&["torsion", "--graph", f.to_str().unwrap(), "--r", "0"]);
    assert_eq!((code, out["error"]["path"].as_str()), (1, Some("r")));
}

#[test]
fn graph_echo_reparses() {
    let f = write(
        "theta.json",
        &serde_json::to_string(&GraphJson::from_graph(&theta())).unwrap(),
    );
    let (code, out) = invoke(&["homology", "--graph", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out["h1"], 2);
    let back = load_graph(&out["graph"].to_string()).unwrap();
    assert_eq!(back, theta());
}

#[test]
fn output_is_stable_across_runs() {
    let f = loop_file();
    let args = ["cosets", "--graph", f.to_str().unwrap(), "--r", "3"];
    let (_, a) = invoke(&args);
    let (_, b) = invoke(&args);
    assert_eq!(render(&a), render(&b));
    assert_eq!(a["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn gamma_monoid_needs_coordinates() {
    let f = loop_file();
    let (code, out) = invoke(&["monoid", "--graph", f.to_str().unwrap(), "--kind", "gamma"]);
    assert_eq!((code, out["error"]["path"].as_str()), (1, Some("gamma")));
    let (code, out) = invoke(&[
        "monoid",
        "--graph",
        f.to_str().unwrap(),
        "--kind",
        "gamma",
        "--gamma",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out["hilbert_basis"], serde_json::json!([["1/2"]]));
}
