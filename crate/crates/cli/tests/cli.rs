//! End-to-end runs of the `tenfold` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use tenfold::AbelianGroupPresentation;
use tenfold_cli::report::{Report, HEADER};

fn tenfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenfold"))
        .args(args)
        .env_remove("TENFOLD_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn machine(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "machine"]);
    let out = tenfold(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    Report::parse(&stdout(&out)).expect("well-formed report")
}

fn spec_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).expect("write spec");
    path
}

#[test]
fn dupont_k_groups_of_z2_with_time_reversal() {
    let r = machine(&["kgroup", "--group", "Z2", "--phi", "id", "--tau", "tau_id"]);
    let want = ["Z", "0", "0", "0", "Z", "Z/2", "Z/2", "0"];
    for (k, w) in want.iter().enumerate() {
        let key = format!("k.{}", -(k as i64));
        let got = AbelianGroupPresentation::parse(r.get(&key).expect("degree present")).expect("presentation");
        assert_eq!(got, AbelianGroupPresentation::parse(w).unwrap(), "{key}");
    }
}

#[test]
fn untwisted_time_reversal_prints_the_bott_sequence() {
    let out = tenfold(&["kgroup", "--group", "Z2", "--phi", "id"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let values: Vec<&str> =
        text.lines().filter(|l| l.trim_start().starts_with("n =")).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(values, ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"]);
}

#[test]
fn twist_group_of_z2_is_cyclic_of_order_four() {
    let out = tenfold(&["twists", "--group", "Z2", "--phi", "id"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Z/4, generator c_id"), "{}", stdout(&out));
    let r = machine(&["twists", "--group", "Z2", "--phi", "id"]);
    assert_eq!(AbelianGroupPresentation::parse(r.get("twists").unwrap()), AbelianGroupPresentation::parse("Z/4"));
}

#[test]
fn cohomology_of_klein_four_on_cosets() {
    let r = machine(&["cohomology", "--group", "Z2xZ2", "--phi", "p1", "--degree", "3"]);
    assert_eq!(AbelianGroupPresentation::parse(r.get("H^3").unwrap()), AbelianGroupPresentation::parse("Z/2 + Z/2"));
}

#[test]
fn clifford_reports_the_abs_group() {
    let r = machine(&["clifford", "--signature", "0,1"]);
    assert_eq!(AbelianGroupPresentation::parse(r.get("abs_group").unwrap()), AbelianGroupPresentation::parse("0"));
    let r = machine(&["clifford", "--signature", "1,0"]);
    assert_eq!(AbelianGroupPresentation::parse(r.get("abs_group").unwrap()), AbelianGroupPresentation::parse("Z/2"));
}

#[test]
fn fast_verify_suites_pass() {
    let out = tenfold(&["verify", "--suite", "appendix-a,bott,dictionary,exact", "--format", "machine"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let r = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(r.get("failed"), Some("0"));
    assert!(r.get("passed").unwrap().parse::<usize>().unwrap() > 30);
}

#[test]
fn machine_reports_are_reproducible() {
    let args = ["blocks", "--group", "Q8", "--phi", "hom:1", "--format", "machine"];
    let a = tenfold(&args);
    let b = tenfold(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with(HEADER));
}

#[test]
fn every_machine_value_reparses() {
    let r = machine(&["kgroup", "--group", "D4", "--phi", "hom:1"]);
    let again = Report::parse(&r.to_machine()).unwrap();
    assert_eq!(r, again);
    for (key, value) in r.with_prefix("k.") {
        assert!(AbelianGroupPresentation::parse(value).is_some(), "{key}={value}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tenfold"));
        cmd.args(["oracle", "--group", "S3", "--phi", "hom:1", "--format", "machine"]);
        match seed {
            Some(s) => cmd.env("TENFOLD_SEED", s),
            None => cmd.env_remove("TENFOLD_SEED"),
        };
        cmd.output().unwrap()
    };
    let default = Report::parse(&stdout(&run(None))).unwrap();
    assert_eq!(default.get("seed"), Some("1"));
    let seeded = Report::parse(&stdout(&run(Some("7")))).unwrap();
    assert_eq!(seeded.get("seed"), Some("7"));
    assert_eq!(run(Some("seven")).status.code(), Some(3));
}

#[test]
fn exit_codes_separate_parse_and_validation_errors() {
    assert_eq!(tenfold(&["kgroup", "--bogus"]).status.code(), Some(2));
    assert_eq!(tenfold(&["kgroup", "--degree", "x..y"]).status.code(), Some(2));
    assert_eq!(tenfold(&["kgroup", "--group", "Q99"]).status.code(), Some(3));
    assert_eq!(tenfold(&["clifford"]).status.code(), Some(3));
    assert_eq!(tenfold(&["kgroup", "--group", "Z2", "--tau", "tau_id"]).status.code(), Some(3));
    assert_eq!(tenfold(&["verify", "--suite", "nope"]).status.code(), Some(3));
}

#[test]
fn empty_spec_is_a_positioned_parse_error() {
    let path = spec_file("empty.toml", "");
    let out = tenfold(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at 1:1"), "{}", stderr(&out));
}

#[test]
fn conflicting_twist_selectors_are_rejected_at_the_second_key() {
    let path = spec_file("conflict.toml", "command = \"kgroup\"\ngroup = \"Z2\"\ntau = \"mu\"\ntau_class = \"1\"\n");
    let out = tenfold(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("at 4:1"), "{}", stderr(&out));
}

#[test]
fn preset_only_spec_runs_with_defaults() {
    let path = spec_file("preset.toml", "group = \"D4\"\n");
    let out = tenfold(&["run", path.to_str().unwrap(), "--format", "machine"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(r.get("command"), Some("kgroup"));
    assert_eq!(AbelianGroupPresentation::parse(r.get("k.0").unwrap()), AbelianGroupPresentation::parse("Z^5"));
}

#[test]
fn unknown_spec_keys_point_at_the_key() {
    let path = spec_file("unknown.toml", "group = \"Z2\"\ncolour = \"red\"\n");
    let out = tenfold(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at 2:1"), "{}", stderr(&out));
}

#[test]
fn internal_errors_exit_with_four() {
    let failure = tenfold_cli::Failure::internal("broken invariant");
    assert_eq!(failure.kind.exit_code(), 4);
}
