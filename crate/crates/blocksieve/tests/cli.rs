//! End-to-end runs of the `blocksieve` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocksieve"))
        .args(args)
        .env_remove("BLOCKSIEVE_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn blocks_of_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "0 1\n1 2\n");
    let o = run(&["--format", "json", "blocks", &p3]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["cut_vertices"], serde_json::json!(["1"]));
    let human = stdout(&run(&["blocks", &p3]));
    assert!(human.contains("blocks (2)") && human.contains("cut vertices (1)"));
}

#[test]
fn blocks_of_inline_k4() {
    let v = json(&run(&["--format", "json", "blocks", "g6:C~"]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert!(v["cut_vertices"].as_array().unwrap().is_empty());
    let dot = stdout(&run(&["--format", "dot", "blocks", "g6:C~"]));
    assert!(dot.trim_start().starts_with("graph") || dot.contains("graph"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let o = run(&["blocks", "g6:C"]);
    assert_eq!(code(&o), 10);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 1\n1 x\n");
    let o = run(&["blocks", &bad]);
    assert_eq!(code(&o), 10);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:"));
    assert_eq!(code(&run(&["blocks", "/nonexistent/graph.txt"])), 12);
}

#[test]
fn sieve_exit_codes() {
    let c4 = fixture("c4.txt");
    let o = run(&["sieve", &c4, &c4]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ISO"));
    assert_eq!(code(&run(&["sieve", "g6:Bg", "g6:Bw"])), 1);
    // the two 8-vertex trees: a path and a star
    assert_eq!(code(&run(&["sieve", "g6:GhCGGC", "g6:GsaCC?"])), 1);
    // 4x4 rook's graph against the Shrikhande graph
    let o = run(&[
        "--format",
        "json",
        "sieve",
        "g6:O~`HW}GPHDaNaGPCcPWaN",
        "g6:OtrTR@HPPFEIEHDI_rGSl",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["verdict"], "UNKNOWN");
}

#[test]
fn sieve_json_reports_evidence() {
    let o = run(&["--format", "json", "sieve", &fixture("c4.txt"), "g6:C~"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["verdict"], "NOT_QI");
    let ev = v["evidence"].as_array().unwrap();
    assert_eq!(ev.last().unwrap()["outcome"], "refuted");
    assert!(ev.last().unwrap()["justification"].as_str().unwrap().len() > 10);
}

#[test]
fn batch_reports_worst_verdict() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "0 1\n1 2\n2 0\n");
    write(dir.path(), "b.txt", "5 6\n6 7\n7 5\n");
    let manifest = write(
        dir.path(),
        "pairs.txt",
        "# pairs\na.txt b.txt\na.txt g6:Bg\n",
    );
    let o = run(&["sieve", "--batch", &manifest, "--jobs", "2"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    let first = text.find("a.txt vs").unwrap();
    assert!(text[first..].contains("ISO"));
    let only_iso = write(dir.path(), "iso.txt", "a.txt b.txt\n");
    assert_eq!(code(&run(&["sieve", "--batch", &only_iso])), 0);
    let broken = write(dir.path(), "broken.txt", "a.txt missing.txt\n");
    assert_eq!(code(&run(&["sieve", "--batch", &broken])), 12);
}

#[test]
fn gamma_splits_at_a_cut_vertex() {
    let o = run(&[
        "--format",
        "json",
        "gamma",
        &fixture("glued_triangles.txt"),
        "--anchor",
        "cut:0",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["copies"].as_object().unwrap().len(), 2);
}

#[test]
fn gamma_of_a_cycle_at_its_centre_is_edgeless() {
    let o = run(&[
        "--format",
        "json",
        "gamma",
        &fixture("c4.txt"),
        "--anchor",
        "zbar",
    ]);
    assert_eq!(code(&o), 0);
    let comps = json(&o)["components"].as_array().unwrap().clone();
    assert_eq!(comps.len(), 4);
    assert!(comps
        .iter()
        .all(|c| c["edges"].as_array().unwrap().is_empty()));
}

#[test]
fn gamma_rejects_a_non_block_anchor() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "0 1\n1 2\n");
    assert_eq!(code(&run(&["gamma", &p3, "--anchor", "block:0,2"])), 11);
    assert_eq!(code(&run(&["gamma", &p3, "--anchor", "cut:0"])), 11);
    assert_eq!(code(&run(&["gamma", &p3, "--anchor", "nonsense"])), 2);
}

#[test]
fn verify_quantum_automorphism_of_c4() {
    let c4 = fixture("c4.txt");
    let o = run(&[
        "--format",
        "json",
        "verify-mu",
        &c4,
        &c4,
        &fixture("c4_mu.json"),
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!(v["noncommutativity"].as_f64().unwrap() > 0.1);
    // the same unitary does not intertwine a path with the cycle
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", "0 1\n1 2\n2 3\n");
    assert_eq!(
        code(&run(&["verify-mu", &p4, &p4, &fixture("c4_mu.json")])),
        1
    );
}

#[test]
fn transport_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let g = fixture("glued_triangles.txt");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "transport-mu",
        &g,
        &g,
        &fixture("glued_triangles_swap.json"),
        "--anchor",
        "cut:0",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = blocksieve::mu_json::parse_mu(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.size(), 6);
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));

    let sun = fixture("sun.txt");
    let o = run(&[
        "transport-mu",
        &sun,
        &sun,
        &fixture("sun_mu.json"),
        "--anchor",
        "zbar",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(blocksieve::mu_json::parse_mu(&stdout(&o)).unwrap().dim(), 2);
    // the quantum unitary of the sun moves cut vertex 0, so it is rejected
    assert_eq!(
        code(&run(&[
            "transport-mu",
            &sun,
            &sun,
            &fixture("sun_mu.json"),
            "--anchor",
            "cut:0"
        ])),
        11
    );
}

#[test]
fn tolerance_is_validated() {
    let c4 = fixture("c4.txt");
    assert_eq!(code(&run(&["--tolerance", "0", "blocks", &c4])), 13);
    assert_eq!(code(&run(&["--format", "dot", "sieve", &c4, &c4])), 13);
}
