use std::process::{Command, Output};

use coset_ideal::atlas::AtlasReport;
use coset_ideal::groupoid::cross_checked_report;
use coset_ideal::hls::{hls_report, HlsReport};
use coset_ideal::ideal::Witness;
use coset_ideal::norm::{default_subsets, normcheck, NormcheckReport};
use coset_ideal::{FiniteGroup, IdealReport, Subgroup, SubgroupFamily};

const Z2: &str = r#"{"kind":"cyclic","n":2}"#;
const S3: &str = r#"{"kind":"symmetric","n":3}"#;
const KLEIN: &str = r#"{"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":2}]}"#;
const WHOLE_Z2: &str = r#"{"subgroups":[[0,1]]}"#;
const TRANSPOSITIONS: &str = r#"{"conjugacy_class_of":[1]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coset-ideal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_cyclic_two() {
    let out = run(&["analyze", "--group", Z2, "--family", WHOLE_Z2]);
    assert_eq!(code(&out), 0);
    let report: IdealReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report.algebraic_kernel_dim, report.full_kernel_dim), (1, 1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["witness"]["coeffs"], serde_json::json!(["1", "-1"]));
    assert_eq!(value["in_class_I"], serde_json::json!(true));
}

#[test]
fn analyze_klein_minimal() {
    let out = run(&["analyze", "--group", KLEIN, "--family", r#"{"minimal":true}"#]);
    assert_eq!(code(&out), 0);
    let report: IdealReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report.algebraic_kernel_dim, report.full_kernel_dim), (0, 0));
    assert!(report.witness.is_none());
}

#[test]
fn analyze_report_round_trips_and_matches_library() {
    let out = run(&["analyze", "--group", S3, "--family", TRANSPOSITIONS]);
    assert_eq!(code(&out), 0);
    let parsed: IdealReport = serde_json::from_str(&stdout(&out)).unwrap();
    let g = FiniteGroup::symmetric(3).unwrap();
    let family: SubgroupFamily = [[0, 1], [0, 2], [0, 5]]
        .iter()
        .map(|s| Subgroup::new(&g, s.iter().copied()).unwrap())
        .collect();
    assert_eq!(parsed, cross_checked_report(&g, &family).unwrap());
    let sign: Vec<String> = [1, -1, -1, 1, 1, -1].iter().map(i32::to_string).collect();
    let coeffs: Vec<String> = parsed.witness.unwrap().coeffs.iter().map(ToString::to_string).collect();
    assert_eq!(coeffs, sign);
}

#[test]
fn witness_command() {
    let out = run(&["witness", "--group", Z2, "--family", WHOLE_Z2]);
    assert_eq!(code(&out), 0);
    let w: Witness = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(w.coeffs, vec![1.into(), (-1).into()]);
    let out = run(&["witness", "--group", Z2, "--family", r#"{"subgroups":[[0]]}"#]);
    assert_eq!(stdout(&out).trim(), "null");
}

#[test]
fn hls_command() {
    let out = run(&["hls", "--group", Z2, "--family", WHOLE_Z2, "--depth", "3"]);
    assert_eq!(code(&out), 0);
    let report: HlsReport = serde_json::from_str(&stdout(&out)).unwrap();
    let g = FiniteGroup::cyclic(2).unwrap();
    assert_eq!(report, hls_report(&g, &SubgroupFamily::new([Subgroup::whole(&g)]), 3).unwrap());
    assert!(report.extremely_dangerous && report.witness_lifted);
    assert_eq!(report.verify_singular, Some(true));

    let out = run(&["hls", "--group", S3, "--family", TRANSPOSITIONS, "--depth", "2"]);
    let report: HlsReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.extremely_dangerous);
    assert_eq!(report.verify_singular, Some(true));

    let out = run(&["hls", "--group", S3, "--family", r#"{"subgroups":[[0]]}"#]);
    let report: HlsReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!report.extremely_dangerous);
}

#[test]
fn ai_atlas_small() {
    let out = run(&["ai-atlas", "--max-order", "4"]);
    assert_eq!(code(&out), 0);
    let report: AtlasReport = serde_json::from_str(&stdout(&out)).unwrap();
    let flagged: Vec<&str> = report.rows.iter().filter(|r| !r.ai_span).map(|r| r.label.as_str()).collect();
    assert_eq!(flagged, vec!["Z2xZ2"]);
    assert_eq!(report.disagreements, 0);
    assert_eq!(code(&run(&["ai-atlas", "--max-order", "65"])), 1);
}

#[test]
fn normcheck_passes_and_fails_by_tolerance() {
    let z6 = r#"{"kind":"cyclic","n":6}"#;
    let out = run(&["normcheck", "--group", z6, "--family", r#"{"subgroups":[[0,3]]}"#, "--trials", "100"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["max_residual"].as_f64().unwrap() < 1e-8);

    // rounding residuals on S3 are around 1e-15
    let out = run(&["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--tol", "1e-30"]);
    assert_eq!(code(&out), 3);

    let all_units = run(&["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--subsets", "[[0,1,2]]"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&all_units)).unwrap();
    assert_eq!(value["max_residual"].as_f64(), Some(0.0));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--seed", "42", "--trials", "20"],
        vec!["analyze", "--group", S3, "--family", TRANSPOSITIONS],
        vec!["ai-atlas", "--max-order", "16"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--seed", "1", "--trials", "5"]);
    let b = run(&["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--seed", "2", "--trials", "5"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn normcheck_report_round_trips() {
    let out = run(&["normcheck", "--group", S3, "--family", TRANSPOSITIONS, "--trials", "10"]);
    let parsed: NormcheckReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", stdout(&out));
    let g = FiniteGroup::symmetric(3).unwrap();
    let family = coset_ideal::spec::resolve_family(&g, &serde_json::from_str(TRANSPOSITIONS).unwrap(), false).unwrap();
    let cg = coset_ideal::groupoid::CosetGroupoid::build(&g, &family).unwrap();
    assert_eq!(parsed, normcheck(cg.groupoid(), default_subsets(3), 10, 0, 1e-8).unwrap());
}

#[test]
fn files_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("group.json");
    let family = dir.path().join("family.json");
    let report = dir.path().join("report.json");
    std::fs::write(&group, S3).unwrap();
    std::fs::write(&family, TRANSPOSITIONS).unwrap();
    let out = run(&[
        "analyze",
        "--group",
        group.to_str().unwrap(),
        "--family",
        family.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let parsed: IdealReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.algebraic_kernel_dim, 1);
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(code(&run(&["analyze", "--group", "{not json", "--family", WHOLE_Z2])), 1);
    assert_eq!(code(&run(&["analyze", "--group", Z2, "--family", r#"{"bogus":1}"#])), 1);
    assert_eq!(code(&run(&["analyze", "--group", Z2])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["analyze", "--group", "/nonexistent.json", "--family", WHOLE_Z2])), 1);
    assert_eq!(code(&run(&["hls", "--group", Z2, "--family", WHOLE_Z2, "--depth", "0"])), 1);
    assert_eq!(code(&run(&["normcheck", "--group", Z2, "--family", WHOLE_Z2, "--trials", "0"])), 1);
    assert_eq!(code(&run(&["normcheck", "--group", Z2, "--family", WHOLE_Z2, "--tol", "-1"])), 1);
}

#[test]
fn closure_policy() {
    let single = r#"{"subgroups":[[0,1]]}"#;
    assert_eq!(code(&run(&["analyze", "--group", S3, "--family", single, "--no-auto-close"])), 1);
    let out = run(&["analyze", "--group", S3, "--family", single]);
    assert_eq!(code(&out), 0);
    let report: IdealReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.algebraic_kernel_dim, 1);
}
