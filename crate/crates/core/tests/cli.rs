//! The command-line binary: outputs, exit codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zelevinsky")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn matrices_and_multiplicities_give_the_same_tables() {
    let a = bin(&["rank-table", &data("rrllrl.json")]);
    let b = bin(&["rank-table", &data("rrllrl_multiplicities.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).ends_with("7\t3\t3\t1\t2\t1\t1\n"));
}

#[test]
fn perm_split_table() {
    let o = bin(&["perm", "--show-vq-split", &data("rrllrl.json")]);
    let text = stdout(&o);
    assert!(text.contains("\n7\t1\t1+1\t1+3\t3+3\t3+3\t1+5\t6\n"), "{text}");
    assert!(text.contains("\n6\t1+0\t2+0\t1+2\t3+2\t3+2\t1+4\t5\n"), "{text}");
}

#[test]
fn zelevinsky_prints_matrix_and_pattern() {
    let text = stdout(&bin(&["zelevinsky", &data("rrll.json")]));
    assert!(text.starts_with("# zeta(V): block rows S1 = (1,2,5,4,3), block columns S2 = (5,4,1,2,3)\n"));
    // Last row of the pattern: free through block column [2], then identity.
    assert!(text.ends_with("3\t*\t*\t*\t*\t*\t*\t*\t*\t0\t1\n"), "{text}");
}

#[test]
fn image_check_reports_the_violated_relation() {
    let file = data("rrll.json");
    assert!(stdout(&bin(&["image-check", &file])).starts_with("accept\n"));
    let o = bin(&["image-check", "--perturb", "9,1,5", &file]);
    assert_eq!(stdout(&o), "reject\timage violation: x_{9,1} in block ([3],[5]) must be 0\n");
    let o = bin(&["image-check", "--perturb", "9,5", &file]);
    assert!(stdout(&o).contains("x_{9,5} - x_{9,7}x_{3,5} - x_{9,8}x_{4,5} must be 0"));
    let o = bin(&["image-check", "--perturb", "1,1", &file]);
    assert!(stdout(&o).starts_with("reject\tpattern violation at x_{1,1}"));
}

#[test]
fn bruhat_and_degenerates() {
    assert_eq!(stdout(&bin(&["bruhat", "1,2,3", "(3,2,1)"])), "true\n");
    assert!(stdout(&bin(&["bruhat", "3,2,1", "1,2,3"])).starts_with("false\twindow"));
    let a = data("rrllrl.json");
    let b = data("rrllrl_multiplicities.json");
    assert_eq!(stdout(&bin(&["degenerates", &a, &b])), "true\n");
}

#[test]
fn usage_and_input_errors_exit_with_2() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "--bogus"]).status.code(), Some(2));
    assert_eq!(bin(&["rank-table", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "--max-n", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["bruhat", "1,1", "1,2"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(data("rrllrl.json")).unwrap().replace("[2, 2, 2, 2, 1, 1, 1]", "[2, 2, 0, 2, 1, 1, 1]");
    std::fs::write(&bad, text).unwrap();
    let o = bin(&["rank-table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dims[2]"));
}

#[test]
fn check_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let args = ["check", "--trials", "1000", "--seed", "42"];
    let a = bin(&[&args[..], &["--jobs", "1", "--report", report.to_str().unwrap()]].concat());
    let b = bin(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["seed"], 42);
    assert_eq!(json["suites"].as_array().unwrap().len(), 8);
    assert!(json["suites"][0]["wall_time"].is_number());
}

#[test]
fn check_with_pinned_orientation_and_rationals() {
    let o = bin(&["check", "--trials", "20", "--orientation", "RRLLRL", "--field", "rational", "--max-dim", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("check seed=0 field=Q max-n=8 max-dim=2\n"));
}

#[test]
fn single_vertex_instances_are_accepted() {
    let file = data("single_vertex.json");
    for cmd in ["rank-table", "zelevinsky", "perm", "decompose", "mult-matrix", "image-check"] {
        assert_eq!(bin(&[cmd, &file]).status.code(), Some(0), "{cmd}");
    }
    assert!(stdout(&bin(&["decompose", &file])).ends_with("1\t1\t2\n"));
    assert_eq!(stdout(&bin(&["perm", &file])).lines().nth(1), Some("w_Q(r) = (1,2)"));
}
