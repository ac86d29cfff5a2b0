use std::process::Command as Process;

use clap::Parser;
use siegel_ring::cli::{
    rows_from_csv, run, Cli, ExpansionCache, ExpansionRecord, Session, CACHE_ENV,
};
use siegel_ring::ring::GeneratorSet;

fn run_args(args: &[&str]) -> (bool, String) {
    let cli =
        Cli::try_parse_from(std::iter::once("siegel-ring").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let ok = run(cli, &mut out).unwrap();
    (ok, String::from_utf8(out).unwrap())
}

#[test]
fn expand_csv_has_closed_cone_rows() {
    let (ok, text) = run_args(&[
        "expand", "--form", "chi5a", "--prec", "4", "--format", "csv",
    ]);
    assert!(ok);
    let rows = rows_from_csv(&text).unwrap();
    assert_eq!(
        rows.len(),
        1 + siegel_ring::lattice::enumerate_cone(4).len()
    );
    let lead = rows.iter().find(|r| (r.x, r.y, r.z) == (2, 0, -1)).unwrap();
    assert_eq!(lead.coeff, "1");
    assert_eq!(lead.m, 4);
}

#[test]
fn expand_json_round_trips() {
    let (ok, text) = run_args(&[
        "expand",
        "--form",
        "phi2^2*phi4",
        "--prec",
        "5",
        "--format",
        "json",
    ]);
    assert!(ok);
    let record = ExpansionRecord::from_json(&text).unwrap();
    assert_eq!(record.form, "phi2^2*phi4");
    assert_eq!(record.weight, 8);
    let series = record.to_series().unwrap();
    assert_eq!(
        series,
        GeneratorSet::build(5)
            .unwrap()
            .evaluate("phi2^2*phi4")
            .unwrap()
    );
}

#[test]
fn unknown_form_is_an_error() {
    let cli =
        Cli::try_parse_from(["siegel-ring", "expand", "--form", "nosuch", "--prec", "4"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
    let cli =
        Cli::try_parse_from(["siegel-ring", "expand", "--form", "E2", "--prec", "2"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
}

#[test]
fn dims_command() {
    let (ok, text) = run_args(&["dims", "--p", "3", "--from", "5", "--to", "25"]);
    assert!(ok);
    for line in ["15,13,13,13", "20,27,28,28", "25,47,47,47"] {
        assert!(text.lines().any(|l| l == line), "{line}");
    }
    let (_, text) = run_args(&["dims", "--p", "5", "--from", "5", "--to", "6"]);
    assert_eq!(text.lines().count(), 3);
    let cli = Cli::try_parse_from([
        "siegel-ring",
        "dims",
        "--p",
        "2",
        "--from",
        "5",
        "--to",
        "6",
    ])
    .unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
}

#[test]
fn verify_dims_suite() {
    let (ok, text) = run_args(&["verify", "--suite", "dims"]);
    assert!(ok);
    assert!(text.starts_with("PASS"));
}

#[test]
fn cache_serves_truncations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let (_, first) = run_args(&[
        "--cache-dir",
        path,
        "expand",
        "--form",
        "chi5b",
        "--prec",
        "6",
    ]);
    let cache = ExpansionCache::open(dir.path()).unwrap();
    assert_eq!(cache.precisions("chi5b").unwrap(), vec![6]);

    let (_, again) = run_args(&[
        "--cache-dir",
        path,
        "expand",
        "--form",
        "chi5b",
        "--prec",
        "6",
    ]);
    assert_eq!(first, again);

    let direct = GeneratorSet::build(4).unwrap().chi5b;
    let mut session = Session::new(Some(dir.path().to_path_buf())).unwrap();
    assert_eq!(session.expansion("chi5b", 4).unwrap(), direct);
    // Served from the prec-6 file, so nothing new is written.
    assert_eq!(cache.precisions("chi5b").unwrap(), vec![6]);
}

#[test]
fn cache_entries_are_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ExpansionCache::open(dir.path()).unwrap();
    let gens = GeneratorSet::build(5).unwrap();
    cache.store("E2", &gens.chi5a).unwrap();
    // A deliberately wrong entry proves the session reads the cache.
    let mut session = Session::new(Some(dir.path().to_path_buf())).unwrap();
    assert_eq!(session.expansion("E2", 5).unwrap(), gens.chi5a);
}

#[test]
fn binary_exit_status_and_env_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let out = Process::new(env!("CARGO_BIN_EXE_siegel-ring"))
        .args(["expand", "--form", "E2", "--prec", "4"])
        .env(CACHE_ENV, dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("x,y,z,m,coeff\n0,0,0,0,1\n"));
    assert!(dir.path().join("E2-p4.json").exists());

    let out = Process::new(env!("CARGO_BIN_EXE_siegel-ring"))
        .args(["expand", "--form", "nosuch"])
        .env_remove(CACHE_ENV)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nosuch"));
}
