//! End-to-end tests of the `hyperhom` binary: output shapes, exact-value
//! round trips, and the exit-code contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hyperhom_core::rational::{parse_rational, rat};

const EDGES: &str = "a1 a2 a3\na1 a2 b1\na1 b1 b2\n";
const LABELS: &str = "a1,F\na2,F\na3,F\nb1,M\nb2,M\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperhom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn write_example(dir: &Path) -> (String, String) {
    let edges = dir.join("edges.txt");
    let labels = dir.join("labels.txt");
    fs::write(&edges, EDGES).unwrap();
    fs::write(&labels, LABELS).unwrap();
    (
        edges.display().to_string(),
        labels.display().to_string(),
    )
}

#[test]
fn scores_match_hand_example_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, labels) = write_example(dir.path());
    let out = run(&[
        "scores", "--edges", &edges, "--labels", &labels, "--focal", "F", "--k", "3",
        "--baseline", "exact", "--exact",
    ]);
    assert!(out.status.success());
    let expected = "\
k,t,class,affinity,baseline,ratio
3,1,A,1/6,1/6,1
3,1,B,1/3,1/2,2/3
3,2,A,1/3,2/3,1/2
3,2,B,2/3,1/2,4/3
3,3,A,1/2,1/6,3
3,3,B,0,0,undefined
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn exact_csv_round_trips_to_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, labels) = write_example(dir.path());
    let out = run(&[
        "scores", "--edges", &edges, "--labels", &labels, "--focal", "F", "--k", "3",
        "--baseline", "exact", "--exact",
    ]);
    let text = stdout(&out);
    let mut parsed = Vec::new();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        for field in &fields[3..5] {
            parsed.push(parse_rational(field).expect("exact field parses"));
        }
    }
    // Row order is (t asc, class A before B); affinity then baseline.
    assert_eq!(parsed[0], rat(1, 6));
    assert_eq!(parsed[1], rat(1, 6));
    assert_eq!(parsed[2], rat(1, 3));
    assert_eq!(parsed[3], rat(1, 2));
    assert_eq!(parsed[10], rat(0, 1));
}

#[test]
fn default_rendering_is_decimal() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, labels) = write_example(dir.path());
    let out = run(&[
        "scores", "--edges", &edges, "--labels", &labels, "--focal", "F", "--k", "3",
        "--baseline", "exact", "--precision", "4",
    ]);
    let text = stdout(&out);
    assert!(text.contains("3,1,A,0.1667,0.1667,1"), "{text}");
}

#[test]
fn ghi_and_verdict_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, labels) = write_example(dir.path());
    let out = run(&[
        "ghi", "--edges", &edges, "--labels", &labels, "--focal", "F", "--k", "3",
        "--baseline", "exact",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("k,class,ghi\n"));
    assert!(text.contains("3,A,1"));

    let out = run(&[
        "verdict", "--edges", &edges, "--labels", &labels, "--focal", "F", "--k", "3",
        "--baseline", "exact",
    ]);
    let text = stdout(&out);
    assert!(text.contains("3,A,true,false,false,1"), "{text}");
    // Class B has a zero exact baseline at t = 3.
    assert!(text.contains("3,B,undefined,undefined,undefined,undefined"), "{text}");
}

#[test]
fn compositions_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let comps = dir.path().join("comps.txt");
    fs::write(&comps, "3,3,5\n3,2,2\n3,1,1\n").unwrap();
    let out = run(&[
        "scores", "--compositions", comps.to_str().unwrap(), "--alpha", "1/2", "--exact",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3,1,A,1/20,1/4,1/5"), "{text}");
    assert!(text.contains("3,3,A,3/4,1/4,3"), "{text}");

    // Exact baselines are impossible without node data: usage error.
    let out = run(&[
        "scores", "--compositions", comps.to_str().unwrap(), "--baseline", "exact",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hsbm_output_reloads_identically() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("sampled_edges.txt");
    let labels = dir.path().join("sampled_labels.txt");
    let out = run(&[
        "hsbm", "--n", "20", "--k", "3", "--n-a", "9", "--p", "0.3", "--seed", "11",
        "--out-edges", edges.to_str().unwrap(), "--out-labels", labels.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // The emitted pair parses back into the same hypergraph counts.
    let params = hyperhom_core::nullmodels::HsbmParams::uniform(20, 3, 9, 0.3, 11);
    let sampled = hyperhom_core::nullmodels::sample_hsbm(&params).unwrap();
    let reloaded = hyperhom_core::ingest::load_labeled_hypergraph(
        &edges,
        &labels,
        "A",
        &hyperhom_core::ingest::LoadOptions::default(),
    )
    .unwrap();
    assert_eq!(reloaded.edge_count(), sampled.edge_count());
    assert_eq!(reloaded.edge_type_counts(), sampled.edge_type_counts());
}

#[test]
fn verify_certificate_end_to_end() {
    let out = run(&["verify", "--k", "3", "--witness", "binomial", "--exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("delta,5"), "{text}");
    assert!(text.contains("y[B,3],1/5"), "{text}");
    assert!(text.contains("check annihilation,PASS,max |B^T y| = 0"), "{text}");
    assert!(text.contains("check normalization,PASS"), "{text}");

    let out = run(&[
        "verify", "--k", "4", "--witness", "complete:6,7", "--variant", "alternative",
    ]);
    assert!(out.status.success());
}

#[test]
fn witness_subcommand_emits_feasible_point() {
    let out = run(&[
        "witness", "--k", "3", "--witness", "binomial", "--remove", "A,2", "--exact",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x[2],0"), "{text}");
    assert!(text.contains("gamma,3/20"), "{text}");
}

#[test]
fn search_subcommand_exit_codes() {
    let out = run(&[
        "search", "--k", "3", "--witness", "binomial", "--trials", "3000", "--seed", "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("majority_theorem_violations,0"), "{text}");

    // Even k without the middle constraint: possible instances are reported
    // but are not violations.
    let out = run(&[
        "search", "--k", "4", "--witness", "binomial", "--trials", "1000", "--seed", "5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("planted_control_majority,true"));
}

#[test]
fn exit_codes_for_data_and_usage_errors() {
    // Missing file: data error.
    let out = run(&[
        "scores", "--edges", "/nonexistent/e.txt", "--labels", "/nonexistent/l.txt",
        "--focal", "F", "--k", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("IoError"), "{err}");

    // No input at all: usage error.
    let out = run(&["scores", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flag: clap usage error.
    let out = run(&["scores", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // Focal label absent from the labels file: data error with module name.
    let dir = tempfile::tempdir().unwrap();
    let (edges, labels) = write_example(dir.path());
    let out = run(&[
        "scores", "--edges", &edges, "--labels", &labels, "--focal", "purple", "--k", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("FocalLabelAbsent"), "{err}");
}

#[test]
fn converge_reports_rows() {
    let out = run(&[
        "converge", "--n-list", "30,60", "--k", "3", "--p", "0.2", "--num-seeds", "2",
        "--seed", "9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,seed,edges,max_deviation");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("30,9,"));
    assert!(lines[4].starts_with("60,10,"));
}
