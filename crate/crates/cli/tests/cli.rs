use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ext_vanishing::vanishing::VerifyOutcome;
use ext_vanishing_cli::report::{ProvenanceKind, ReportDocument, VerdictKind};

fn extvan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extvan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_column(text: &str) -> Vec<u64> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,dim"));
    lines
        .enumerate()
        .map(|(i, l)| {
            let (n, v) = l.split_once(',').unwrap();
            assert_eq!(n.parse::<usize>().unwrap(), i);
            v.parse().unwrap()
        })
        .collect()
}

fn analyze(dir: &Path, name: &str, config: &str) -> (ReportDocument, String) {
    let cfg = write(dir, &format!("{name}.json"), config);
    let out = dir.join(format!("{name}.report.json"));
    let o = extvan(&["analyze", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = ReportDocument::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    (doc, stdout(&o))
}

#[test]
fn ext_dual_numbers_are_all_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"trunc-poly": {"vars": 1, "exponent": 2}}, "n_max": 10}"#,
    );
    let o = extvan(&["ext", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_column(&stdout(&o)), vec![1; 11]);
}

#[test]
fn ext_exterior_counts_up() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"exterior": {"vars": 2}}, "n_max": 12}"#,
    );
    let out = dir.path().join("dims.csv");
    let o = extvan(&["ext", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let expected: Vec<u64> = (1..=13).collect();
    assert_eq!(csv_column(&std::fs::read_to_string(out).unwrap()), expected);
}

#[test]
fn malformed_config_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"trunc-poly": {"vars": 1, "exponent": "two"}}, "n_max": 10}"#,
            "algebra.trunc-poly.exponent",
        ),
        (
            r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 10, "m": {"syzygy": -1}}"#,
            "m.syzygy",
        ),
        (r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four"}"#, "n_max"),
        (r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 10, "sed": 3}"#, "sed"),
        (r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 10"#, "line 1"),
    ];
    for (i, (text, key)) in cases.iter().enumerate() {
        let cfg = write(dir.path(), &format!("bad{i}.json"), text);
        let o = extvan(&["ext", "--config", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "case {i}");
        assert!(stderr(&o).contains(key), "case {i}: {}", stderr(&o));
    }
    let o = extvan(&["ext", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hypersurface_with_degree_two_operators() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, summary) = analyze(
        dir.path(),
        "t",
        r#"{"schema": 1, "field": {"prime": 3}, "algebra": {"trunc-poly": {"vars": 1, "exponent": 3}}, "n_max": 40, "acting": "degree-two"}"#,
    );
    assert_eq!(doc.verdict.verdict, VerdictKind::PeriodicNonvanishing);
    assert_eq!(doc.verdict.period, 2);
    assert_eq!(doc.verdict.nonvanishing_residues, vec![0, 1]);
    assert_eq!(doc.verification.outcome(), VerifyOutcome::Pass);
    assert_eq!((doc.verification.holdout_from, doc.verification.holdout_to), (30, 40));
    // the periodicity operator is the identity on the periodic tail
    assert_eq!(doc.verdict.provenance, ProvenanceKind::Both);
    assert!(summary.contains("d = 2"), "{summary}");
    assert!(!summary.contains("all even or all odd"));
}

#[test]
fn projective_module_has_vanishing_ext() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, summary) = analyze(
        dir.path(),
        "r",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"exterior": {"vars": 2}}, "m": "regular", "n_max": 20}"#,
    );
    assert_eq!(doc.verdict.verdict, VerdictKind::EventuallyZero);
    assert!(doc.verdict.m0 <= 1);
    assert!(summary.contains("= 0 for all n >= 1"), "{summary}");
}

#[test]
fn klein_four_generators() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, _) = analyze(
        dir.path(),
        "v",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 25, "acting": {"ext-generators": 6}}"#,
    );
    assert_eq!(doc.acting.generator_degrees, Some(vec![1, 1]));
    assert_eq!(doc.verdict.period, 1);
    assert_eq!(doc.verdict.verdict, VerdictKind::PeriodicNonvanishing);
    let w = doc.witness.expect("degree-one witness");
    assert_eq!(w.degree, 1);
    assert_eq!(w.operator_degrees, vec![1, 1]);
}

#[test]
fn lcm_command() {
    assert_eq!(stdout(&extvan(&["lcm", "1", "2", "3"])), "6\n");
    assert_eq!(stdout(&extvan(&["lcm", "1", "2", "3", "4", "5", "6", "7"])), "420\n");
    assert_eq!(stdout(&extvan(&["lcm", "4"])), "4\n");
    assert_eq!(extvan(&["lcm"]).status.code(), Some(1));
    assert_eq!(extvan(&["lcm", "0"]).status.code(), Some(1));
    assert_eq!(extvan(&["lcm", "x"]).status.code(), Some(1));
    assert_eq!(extvan(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(extvan(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 3}, "algebra": {"exterior": {"vars": 2}}, "n_max": 24, "seed": 99}"#,
    );
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("r{i}.json"));
        let o = extvan(&["analyze", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        texts.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let doc = ReportDocument::from_json(&texts[0]).unwrap();
    assert_eq!(doc.to_json(), texts[0]);
    assert_eq!(doc.reverify().unwrap(), doc.verification.outcome());
    assert_eq!(doc.input.seed, 99);

    // a tampered verdict is caught by reverification
    let mut bad = doc.clone();
    bad.verdict.nonvanishing_residues = vec![0];
    assert!(matches!(bad.reverify().unwrap(), VerifyOutcome::Fail { .. }));

    // a seed override changes the echo and nothing else is required of it
    let out = dir.path().join("seeded.json");
    let o = extvan(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "7",
        "--guard",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let seeded = ReportDocument::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!((seeded.input.seed, seeded.input.guard), (7, 6));
    assert_eq!(seeded.verdict, doc.verdict);
}

#[test]
fn json_goes_to_stdout_without_out() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"trunc-poly": {"vars": 1, "exponent": 2}}, "n_max": 20}"#,
    );
    let o = extvan(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.ext.dims, vec![1; 21]);
    assert!(stderr(&o).contains("elapsed"));
    assert!(!stdout(&o).contains("elapsed"));
}

#[test]
fn fibonacci_window_exits_with_fit_failure() {
    let dir = tempfile::tempdir().unwrap();
    let mut fib = vec![1u64, 1];
    while fib.len() < 40 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let cfg = write(
        dir.path(),
        "fib.json",
        &format!(r#"{{"schema": 1, "sequence": {{"terms": {fib:?}}}, "acting": {{"degrees": [1, 2, 3]}}}}"#),
    );
    let o = extvan(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("fit failure"));
}

#[test]
fn dimension_cap_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 30, "limits": {"max_free_dim": 40}}"#,
    );
    for cmd in ["ext", "analyze", "resolve"] {
        let o = extvan(&[cmd, "--config", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3), "{cmd}: {}", stderr(&o));
    }
}

#[test]
fn single_residue_uses_parity_phrasing() {
    let dir = tempfile::tempdir().unwrap();
    let terms: Vec<u64> = (0..30).map(|n| if n % 2 == 0 { n / 2 + 1 } else { 0 }).collect();
    let (doc, summary) = analyze(
        dir.path(),
        "even",
        &format!(r#"{{"schema": 1, "sequence": {{"terms": {terms:?}}}, "acting": {{"degrees": [2, 2]}}}}"#),
    );
    assert_eq!(doc.verdict.nonvanishing_residues, vec![0]);
    assert!(summary.contains("all even or all odd"), "{summary}");
    assert!(summary.contains("exactly for even n"), "{summary}");
    assert!(doc.algebra.is_none());
}

#[test]
fn ext_csv_feeds_back_into_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"dihedral": {"n": 4}}, "n_max": 30}"#,
    );
    let csv = dir.path().join("d8.csv");
    let o = extvan(&["ext", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (doc, _) = analyze(
        dir.path(),
        "seq",
        r#"{"schema": 1, "sequence": {"csv": "d8.csv"}, "acting": {"degrees": [1, 1, 2]}}"#,
    );
    // H^n(D_8, F_2) has dimension n + 1
    let expected: Vec<u64> = (1..=31).collect();
    assert_eq!(doc.ext.dims, expected);
    assert_eq!(doc.verdict.verdict, VerdictKind::PeriodicNonvanishing);
    assert_eq!(doc.verification.outcome(), VerifyOutcome::Pass);
}

#[test]
fn group_table_and_structure_constant_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "z4.csv", "e,g,g2,g3\n0,1,2,3\n1,2,3,0\n2,3,0,1\n3,0,1,2\n");
    let table = write(
        dir.path(),
        "table.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"group-table": "z4.csv"}, "n_max": 8}"#,
    );
    let preset = write(
        dir.path(),
        "preset.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"cyclic": {"order": 4}}, "n_max": 8}"#,
    );
    let a = stdout(&extvan(&["ext", "--config", table.to_str().unwrap()]));
    let b = stdout(&extvan(&["ext", "--config", preset.to_str().unwrap()]));
    assert_eq!(a, b);
    assert_eq!(csv_column(&a), vec![1; 9]);

    // dual numbers over Q by structure constants: 1*1 = 1, 1*x = x*1 = x, x*x = 0
    write(
        dir.path(),
        "dual.json",
        r#"{"labels": ["1", "x"], "unit": 0, "products": [[[1, 0], [0, 1]], [[0, 1], [0, "0/3"]]]}"#,
    );
    let sc = write(
        dir.path(),
        "sc.json",
        r#"{"schema": 1, "field": "rationals", "algebra": {"structure-constants": "dual.json"}, "n_max": 6}"#,
    );
    let o = extvan(&["ext", "--config", sc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(csv_column(&stdout(&o)), vec![1; 7]);

    write(dir.path(), "bad.csv", "e,g\n0,1\n1,1\n");
    let bad = write(
        dir.path(),
        "badtable.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"group-table": "bad.csv"}, "n_max": 4}"#,
    );
    assert_eq!(extvan(&["ext", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn resolve_prints_betti_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 3}, "algebra": {"trunc-poly": {"vars": 2, "exponent": 2}}, "n_max": 5}"#,
    );
    let o = extvan(&["resolve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,betti\n0,1\n1,2\n2,3\n3,4\n4,5\n5,6\n");
    assert!(stderr(&o).contains("minimality: ok"));
}

#[test]
fn degree_two_is_refused_for_group_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 10, "acting": "degree-two"}"#,
    );
    let o = extvan(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("acting"));
}

#[test]
fn batch_directory_with_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let configs = dir.path().join("configs");
    std::fs::create_dir(&configs).unwrap();
    write(
        &configs,
        "a.json",
        r#"{"schema": 1, "field": {"prime": 2}, "algebra": {"trunc-poly": {"vars": 1, "exponent": 2}}, "n_max": 20}"#,
    );
    write(&configs, "b.json", r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four", "n_max": 16}"#);
    write(&configs, "c.json", r#"{"schema": 1, "field": {"prime": 2}, "algebra": "klein-four"}"#);
    let out = dir.path().join("reports");
    let o = extvan(&[
        "analyze",
        "--config",
        configs.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("a.json: nonvanishing"));
    assert!(lines[1].starts_with("b.json: nonvanishing"));
    assert!(lines[2].starts_with("c.json: error"));
    assert!(out.join("a.report.json").exists() && out.join("b.report.json").exists());

    // the same batch on one thread writes identical reports
    let out1 = dir.path().join("reports1");
    extvan(&["analyze", "--config", configs.to_str().unwrap(), "--out", out1.to_str().unwrap()]);
    for name in ["a.report.json", "b.report.json"] {
        assert_eq!(
            std::fs::read(out.join(name)).unwrap(),
            std::fs::read(out1.join(name)).unwrap()
        );
    }
    let o = extvan(&["analyze", "--config", configs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
