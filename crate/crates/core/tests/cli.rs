//! End-to-end tests of the command-line binary: exit-code contract,
//! pipe-compatibility and output determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rck(args: &[&str], stdin: Option<&str>) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_rck"));
    command.args(args);
    command.stdin(Stdio::piped());
    command.stdout(Stdio::piped());
    command.stderr(Stdio::piped());
    let mut child = command.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("binary runs to completion")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn construct_writes_the_document_and_a_summary() {
    let out = rck(&["construct", "--family", "square", "--ell", "3", "--r", "2"], None);
    assert_eq!(exit_code(&out), 0);
    let (graph, coloring) = rck::document::decode(stdout_of(&out).trim()).unwrap();
    assert_eq!(graph.vertex_count(), 18);
    assert_eq!(graph.edge_count(), 144);
    assert_eq!(coloring.unwrap().color_count(), 2);
    assert!(stderr_of(&out).contains("vertices=18 edges=144 colors=2"));
}

#[test]
fn construct_is_deterministic() {
    let args = ["construct", "--family", "remainder", "--ell", "9", "--r", "2", "--p", "1"];
    let first = rck(&args, None);
    let second = rck(&args, None);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn complete_family_reproduces_the_square_construction() {
    let square = rck(&["construct", "--family", "square", "--ell", "3", "--r", "2"], None);
    let complete = rck(&["construct", "--family", "complete", "--n", "18", "--k", "2"], None);
    assert_eq!(square.stdout, complete.stdout);
}

#[test]
fn construct_rejects_inconsistent_flags() {
    // p must stay below r.
    let out = rck(
        &["construct", "--family", "remainder", "--ell", "9", "--r", "2", "--p", "2"],
        None,
    );
    assert_eq!(exit_code(&out), 2);
    // complete family needs --n and --k.
    let out = rck(&["construct", "--family", "complete", "--n", "18"], None);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_exit_codes_encode_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("g.json");
    let out = rck(
        &["construct", "--family", "square", "--ell", "3", "--r", "2", "--out"],
        None,
    );
    // --out without a value is a usage error
    assert_eq!(exit_code(&out), 2);

    let out = rck(
        &[
            "construct", "--family", "square", "--ell", "3", "--r", "2",
            "--out", doc.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&out), 0);

    // The exact global minimum of this construction is 7.
    let ok = rck(&["verify", "--graph", doc.to_str().unwrap(), "--k", "3"], None);
    assert_eq!(exit_code(&ok), 0);
    let report = rck::verifier::VerificationReport::from_json(stdout_of(&ok).trim()).unwrap();
    assert!(report.verdict);
    assert_eq!(report.global_min, Some(7));

    let at_min = rck(&["verify", "--graph", doc.to_str().unwrap(), "--k", "7"], None);
    assert_eq!(exit_code(&at_min), 0);

    let too_high = rck(&["verify", "--graph", doc.to_str().unwrap(), "--k", "8"], None);
    assert_eq!(exit_code(&too_high), 1);
    assert!(stderr_of(&too_high).contains("global_min=7"));

    let usage = rck(&["verify", "--graph", doc.to_str().unwrap(), "--k", "0"], None);
    assert_eq!(exit_code(&usage), 2);

    std::fs::write(&doc, "not json").unwrap();
    let malformed = rck(&["verify", "--graph", doc.to_str().unwrap(), "--k", "1"], None);
    assert_eq!(exit_code(&malformed), 2);
}

#[test]
fn construct_pipes_into_verify() {
    let dir = tempfile::tempdir().unwrap();
    let doc_path = dir.path().join("g.json");
    rck(
        &[
            "construct", "--family", "general", "--ell", "10", "--r", "2",
            "--out", doc_path.to_str().unwrap(),
        ],
        None,
    );
    let file_based = rck(
        &["verify", "--graph", doc_path.to_str().unwrap(), "--k", "2", "--per-case"],
        None,
    );

    let document = rck(
        &["construct", "--family", "general", "--ell", "10", "--r", "2"],
        None,
    );
    let piped = rck(
        &["verify", "--graph", "-", "--k", "2", "--per-case"],
        Some(&stdout_of(&document)),
    );
    assert_eq!(exit_code(&piped), 0);
    assert_eq!(piped.stdout, file_based.stdout);
}

#[test]
fn verify_reports_are_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("g.json");
    rck(
        &[
            "construct", "--family", "square", "--ell", "3", "--r", "2",
            "--out", doc.to_str().unwrap(),
        ],
        None,
    );
    let one = rck(
        &["verify", "--graph", doc.to_str().unwrap(), "--k", "3", "--certificates", "--threads", "1"],
        None,
    );
    let many = rck(
        &["verify", "--graph", doc.to_str().unwrap(), "--k", "3", "--certificates", "--threads", "4"],
        None,
    );
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn oracle_finds_the_four_cycle_value() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("c4.json");
    // K_{2,2} is the 4-cycle.
    std::fs::write(
        &doc,
        r#"{"version":1,"part_sizes":[2,2],"remainder_size":0,"color_count":0,"edges":[[0,2,0],[0,3,0],[1,2,0],[1,3,0]]}"#,
    )
    .unwrap();
    let out = rck(&["oracle", "--graph", doc.to_str().unwrap(), "--k", "2"], None);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(value["colors"], 4);
    assert_eq!(value["witness_edges"].as_array().unwrap().len(), 4);
}

#[test]
fn bounds_csv_and_crossover() {
    let out = rck(&["bounds", "--k-min", "2", "--k-max", "10", "--csv"], None);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,r0,ell0,f_k,chartrand,ratio"));
    assert_eq!(text.lines().count(), 10);
    assert!(stderr_of(&out).contains("crossover at k=8"));

    let json = rck(&["bounds", "--k-min", "2", "--k-max", "10"], None);
    let value: serde_json::Value = serde_json::from_str(stdout_of(&json).trim()).unwrap();
    assert_eq!(value["crossover"], 8);

    let bad = rck(&["bounds", "--k-min", "1", "--k-max", "10"], None);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn export_dot_labels_vertices_by_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("g.json");
    rck(
        &[
            "construct", "--family", "remainder", "--ell", "9", "--r", "2", "--p", "1",
            "--out", doc.to_str().unwrap(),
        ],
        None,
    );
    let out = rck(&["export", "--graph", doc.to_str().unwrap(), "--dot"], None);
    assert_eq!(exit_code(&out), 0);
    let dot = stdout_of(&out);
    assert!(dot.contains("\"u1,1\" -- \"u2,1\""));
    assert!(dot.contains("\"w1\""));
    assert!(dot.contains("label=2"));

    let no_format = rck(&["export", "--graph", doc.to_str().unwrap()], None);
    assert_eq!(exit_code(&no_format), 2);
}

#[test]
fn check_cert_accepts_reports_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("g.json");
    let report_path = dir.path().join("report.json");
    rck(
        &[
            "construct", "--family", "square", "--ell", "2", "--r", "2",
            "--out", doc.to_str().unwrap(),
        ],
        None,
    );
    let verify = rck(
        &[
            "verify", "--graph", doc.to_str().unwrap(), "--k", "1", "--certificates",
            "--out", report_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&verify), 0);

    let ok = rck(
        &["check-cert", "--graph", doc.to_str().unwrap(), "--cert", report_path.to_str().unwrap()],
        None,
    );
    assert_eq!(exit_code(&ok), 0);
    assert!(stderr_of(&ok).contains("all valid"));

    // Tamper with one certificate: reroute a path through its own source.
    let text = std::fs::read_to_string(&report_path).unwrap();
    let mut report: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let path = &mut report["certificates"][0]["paths"][0];
    let first = path[0].clone();
    path.as_array_mut().unwrap().push(first);
    std::fs::write(&report_path, report.to_string()).unwrap();

    let tampered = rck(
        &["check-cert", "--graph", doc.to_str().unwrap(), "--cert", report_path.to_str().unwrap()],
        None,
    );
    assert_eq!(exit_code(&tampered), 1);
    assert!(stderr_of(&tampered).contains("INVALID"));
}
