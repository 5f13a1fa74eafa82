use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn critlab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_critlab"))
        .args(args)
        .env_remove("CRITLAB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut input = child.stdin.take().unwrap();
    let text = stdin.to_string();
    let feeder = std::thread::spawn(move || input.write_all(text.as_bytes()));
    let out = child.wait_with_output().unwrap();
    feeder.join().unwrap().unwrap();
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn corpus(args: &[&str]) -> String {
    let mut full = vec!["corpus"];
    full.extend(args);
    let out = critlab(&full, "");
    assert!(out.status.success());
    stdout(&out)
}

#[test]
fn chi_over_small_corpus() {
    let graphs = corpus(&["--max-n", "7"]);
    let out = critlab(&["chi", "--jobs", "4"], &graphs);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1252);
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r["index"], i);
        let (d, c) = (r["delta"].as_u64().unwrap(), r["chi_prime"].as_u64().unwrap());
        assert!(c == d || c == d + 1);
    }
    let class_two = recs.iter().filter(|r| r["class"] == 2).count();
    assert_eq!(class_two, 69);
}

#[test]
fn filter_finds_the_critical_graphs() {
    let graphs = corpus(&["--max-n", "8", "--connected"]);
    let out = critlab(&["filter", "--critical", "--jobs", "4"], &graphs);
    assert_eq!(out.status.code(), Some(0));
    let kept: Vec<_> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(kept.len(), 26);
    assert!(kept.contains(&"Bw".to_string()), "triangle is critical");
}

#[test]
fn parallel_output_is_identical() {
    let graphs = corpus(&["--max-n", "6"]);
    for cmd in ["chi", "critical", "prune"] {
        let one = critlab(&[cmd, "--jobs", "1"], &graphs);
        let four = critlab(&[cmd, "--jobs", "4"], &graphs);
        assert_eq!(one.stdout, four.stdout, "{cmd}");
        assert_eq!(one.status.code(), four.status.code());
    }
}

#[test]
fn bound_table_rows() {
    let out = critlab(&["bound", "--delta", "56..70", "--table", "--chain"], "");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 15);
    for r in &recs {
        let line: f64 = r["theorem1"].as_str().unwrap().parse().unwrap();
        let chain: f64 = r["chain"].as_str().unwrap().parse().unwrap();
        assert!(chain >= line - 1e-3);
        assert_eq!(r["beats_two_thirds"], true);
    }

    let csv = critlab(&["bound", "--delta", "56..=70", "--table", "--format", "csv"], "");
    let text = stdout(&csv);
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().next().unwrap().starts_with("delta,theorem1"));
}

#[test]
fn bound_below_range_is_an_input_error() {
    let out = critlab(&["bound", "--delta", "40"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(records(&out)[0]["error"].is_string());
}

#[test]
fn malformed_line_exits_two() {
    let out = critlab(&["chi"], "Bw\nnot graph6 !\nCF\n");
    assert_eq!(out.status.code(), Some(2));
    let recs = records(&out);
    assert_eq!(recs.len(), 3);
    assert!(recs[1]["error"].as_str().unwrap().contains("graph6"));
    assert_eq!(recs[2]["chi_prime"], 3);
}

#[test]
fn woodall_prune_yields_a_certificate() {
    let woodall = critlab(&["woodall", "--delta", "6", "--k", "3"], "");
    let out = critlab(&["prune"], &stdout(&woodall));
    assert_eq!(out.status.code(), Some(1));
    let r = &records(&out)[0];
    assert_eq!(r["verified"], true);
    assert!(r["reason"].is_string());
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = critlab(&["critical", "--budget-nodes", "3"], "G~~~~{\n");
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(records(&out)[0]["budget_exhausted"], true);
}

#[test]
fn input_error_outranks_budget() {
    let out = critlab(&["chi", "--budget-nodes", "3"], "G~~~~{\n!!\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lemmas_need_a_threshold_for_small_delta() {
    let out = critlab(&["lemmas", "--which", "ppp"], "Bw\n");
    assert_eq!(out.status.code(), Some(2));
    let out = critlab(&["lemmas", "--which", "val,ppp", "--q", "3/2"], "Bw\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["holds"], true);
}

#[test]
fn discharge_conserves_charge() {
    let out = critlab(&["discharge", "--q", "5/2", "--c", "2", "--transfers"], "Bw\nD~{\n");
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    for r in &recs {
        assert_eq!(r["conserved"], true);
        assert!(r["transfers"].is_array());
    }
}

#[test]
fn seed_is_validated() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_critlab"));
    let out = cmd.args(["prune"]).env("CRITLAB_SEED", "abc").stdin(Stdio::null()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reads_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    std::fs::write(&path, "Bw\n\nCF\n").unwrap();
    let out = critlab(&["chi", path.to_str().unwrap(), "--format", "csv"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.records().count(), 2);
}
