use std::process::Command;

use logseries::binsplit;
use logseries::exactnum::ratio;
use logseries::seriesdef::{self, Family};
use logseries_cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn run_capture(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("logseries").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_logseries")).args(args).output().unwrap()
}

#[test]
fn zero_digits_is_usage_error() {
    assert_eq!(run_capture(&["compute", "--digits", "0"]).0, EXIT_USAGE);
    assert_eq!(binary(&["compute", "--digits", "0"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn usage_errors() {
    assert_eq!(run_capture(&["compute", "--digits", "10", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&[]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["cost", "--all", "--series", "log2-eq8"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["cost"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["compute", "--series", "log4-nope", "--digits", "5"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["compute", "--p", "3", "--series", "log2-eq8", "--digits", "5"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["family", "--series", "level9", "--p", "2"]).0, EXIT_USAGE);
    assert_eq!(run_capture(&["alternating", "--p", "5", "--limit"]).0, EXIT_USAGE);
}

#[test]
fn help_exits_cleanly() {
    let (code, text) = run_capture(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("wz-verify"));
}

#[test]
fn compute_with_verification() {
    let (code, text) =
        run_capture(&["compute", "--p", "2", "--digits", "10000", "--series", "log2-eq8", "--verify", "log2-eq9"]);
    assert_eq!(code, EXIT_OK);
    let spec = seriesdef::catalog_get("log2-eq8").unwrap();
    let lib = binsplit::evaluate(&spec, 10000).unwrap().to_file_format();
    assert_eq!(text, lib + "# verified against log2-eq9\n");
    // header, integer line, 100 digit rows, verification line
    assert_eq!(text.lines().count(), 103);
}

#[test]
fn compute_picks_cheapest_series() {
    let (code, text) = run_capture(&["compute", "--p", "3", "--digits", "50"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("# log(3) digits=50 series=log3-eq8a\n1.\n0986122886 6810969139"));
}

#[test]
fn cost_table() {
    let (code, text) = run_capture(&["cost", "--all"]);
    assert_eq!(code, EXIT_OK);
    let printed = [
        ("log2-eq8", 0.9679),
        ("log3-eq8a", 1.4564),
        ("log5-eq8b", 1.2280),
        ("log2-eq9", 1.1335),
        ("log2-eq11", 1.2292),
        ("log2-eq13", 1.3001),
        ("log3-eq15a", 1.6459),
        ("log2-eq18", 1.2189),
    ];
    for (label, want) in printed {
        let line = text.lines().find(|l| l.starts_with(&format!("{label} "))).unwrap();
        let got: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
        assert!((got - want).abs() < 1e-4, "{label}: {got}");
    }
}

#[test]
fn family_accepts_fractions() {
    let (code, text) = run_capture(&["family", "--series", "d6", "--p", "5/2", "--digits", "60"]);
    assert_eq!(code, EXIT_OK);
    let spec = Family::D6.build(&ratio(5, 2)).unwrap();
    assert_eq!(text, binsplit::evaluate(&spec, 60).unwrap().to_file_format());
    assert!(text.contains("9162907318 7415506518"));
}

#[test]
fn out_of_domain_is_failure() {
    assert_eq!(run_capture(&["family", "--series", "level1", "--p", "20"]).0, EXIT_FAILURE);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("logseries-cli-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, text) = run_capture(&["compute", "--series", "log5-eq8b", "--digits", "30", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(text.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.contains("1.\n6094379124 3410037460 0759333226"));
}

#[test]
fn thread_count_does_not_change_digits() {
    let a = binary(&["--threads", "1", "compute", "--series", "log2-eq18", "--digits", "3000"]);
    let b = binary(&["--threads", "3", "compute", "--series", "log2-eq18", "--digits", "3000"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn proof_and_certificate_reports() {
    let (code, text) = run_capture(&["prove", "--p", "10", "--digits", "40"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.contains("complex z") && !text.contains("FAILED"));
    let (code, text) = run_capture(&["wz-verify", "--series", "log3-v2", "--grid", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("telescoping ok (64 points"));
}

#[test]
fn alternating_rows() {
    let (code, text) = run_capture(&["alternating", "--p", "10"]);
    assert_eq!(code, EXIT_OK);
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[0], "10");
    assert_eq!(cols[3], "-1/80");
    let (code, text) = run_capture(&["alternating", "--scan", "6:9"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.ends_with("# 0 hits in [6, 9]\n"));
}

#[test]
fn search_rediscovers_log3() {
    let (code, text) = run_capture(&["search", "--p", "3", "--primes", "3", "--grid=-8:0", "--digits", "200"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains(" [-1, 88, -14]\n rho_1 = 1/243\n"));
}
