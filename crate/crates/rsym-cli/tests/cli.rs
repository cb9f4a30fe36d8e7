use std::path::PathBuf;
use std::process::{Command, Output};

use rsym_cli::report::{Outcome, SolverStatus};
use rsym_cli::VerificationReport;

fn pres(name: &str) -> String {
    format!("{}/presentations/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsym")).args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn every_shipped_presentation_validates() {
    let dir = format!("{}/presentations", env!("CARGO_MANIFEST_DIR"));
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let out = rsym(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), text(&out.stderr));
        assert!(out.stderr.is_empty());
        n += 1;
    }
    assert!(n >= 6);
}

#[test]
fn undeclared_generator_names_letter_and_line() {
    let out = rsym(&["validate", &fixture("undeclared.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("\"z\"") && err.contains("undeclared.json:13:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn broken_table_reports_axiom_witness() {
    let out = rsym(&["is-hyperbolic", "--epsilon", "1/10", &fixture("broken_p4.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("P4 at (y, y, Y)"), "{err}");
}

#[test]
fn malformed_json_has_a_position() {
    let out = rsym(&["validate", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("malformed.json:3:"), "{}", text(&out.stderr));
}

#[test]
fn bad_flags_and_fractions_are_input_errors() {
    for args in [
        vec!["is-hyperbolic", "--epsilon", "0.1", "x.json"],
        vec!["is-hyperbolic", "--epsilon", "-1/10", "x.json"],
        vec!["validate", "--frobnicate", "x.json"],
        vec!["no-such-command"],
        vec!["validate", "/nonexistent/file.json"],
    ] {
        let out = rsym(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let help = rsym(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(help.stderr.is_empty());
}

#[test]
fn tri_3_7_is_hyperbolic_with_trivint_solver() {
    let report = scratch("tri37.json");
    let out = rsym(&["is-hyperbolic", "--epsilon", "1/10", "--report", report.to_str().unwrap(), &pres("tri_3_7")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let s = text(&out.stdout);
    assert!(s.contains("solver: trivint-verified") && s.contains("Dehn slope"), "{s}");
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.outcome, Outcome::Verified);
    assert_eq!(r.solver, Some(SolverStatus::TrivintVerified));
    assert_eq!(r.bounds.as_ref().unwrap().pd_solver.unwrap().to_string(), "3n");
}

#[test]
fn table_and_constructor_files_agree() {
    let a = rsym(&["is-hyperbolic", "--epsilon", "1/10", &pres("tri_3_7")]);
    let b = rsym(&["is-hyperbolic", "--epsilon", "1/10", &pres("tri_3_7_table")]);
    let strip = |o: &Output| text(&o.stdout).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn tri_3_5_fails_with_a_trail() {
    let report = scratch("tri35.json");
    let out = rsym(&["is-hyperbolic", "--epsilon", "1/10", "--report", report.to_str().unwrap(), &pres("tri_3_5")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stderr.is_empty());
    let s = text(&out.stdout);
    assert!(s.contains("failing relator: R1") && s.contains("start place:") && s.contains("trail"), "{s}");
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.outcome, Outcome::Fail);
    assert!(!r.failure.unwrap().trail.is_empty());
}

#[test]
fn free_group_gets_the_empty_vp_bound() {
    let report = scratch("free.json");
    let out = rsym(&["is-hyperbolic", "--epsilon", "1/10", "--report", report.to_str().unwrap(), &pres("free_c16")]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stdout));
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let b = r.bounds.unwrap();
    assert_eq!((b.part.as_str(), b.pd_rsym.to_string()), ("empty-vp", "6n - 10".to_string()));
}

#[test]
fn reports_round_trip_and_repeat_byte_for_byte() {
    for name in ["tri_3_7", "tri_3_5", "two_three_13_7"] {
        let (a, b) = (scratch(&format!("{name}-par.json")), scratch(&format!("{name}-seq.json")));
        let oa = rsym(&["is-hyperbolic", "--epsilon", "1/10", "--report", a.to_str().unwrap(), &pres(name)]);
        let ob = rsym(&["--sequential", "is-hyperbolic", "--epsilon", "1/10", "--report", b.to_str().unwrap(), &pres(name)]);
        assert_eq!(oa.stdout, ob.stdout);
        let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
        assert_eq!(ta, tb, "{name}");
        let r: VerificationReport = serde_json::from_str(&ta).unwrap();
        assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", ta);
    }
}

#[test]
fn timing_is_opt_in() {
    let report = scratch("timed.json");
    rsym(&["is-hyperbolic", "--epsilon", "1/10", "--timing", "--report", report.to_str().unwrap(), &pres("tri_3_8")]);
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r.timing_ms.is_some());
    let r2: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, r2);
}

#[test]
fn solve_word_examples() {
    let t37 = pres("tri_3_7");
    let out = rsym(&["solve-word", "--word", "xyxyxyxyxyxyxy", &t37]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "xyxyxyxyxyxyxy\ttrue\n");
    let out = rsym(&["solve-word", "--word", "x(xy)^7x", "--word", "xy", &t37]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text(&out.stdout), "x(xy)^7x\ttrue\nxy\tfalse\n");
    assert!(out.stderr.is_empty());
    let out = rsym(&["solve-word", "--file", &fixture("words.txt"), &t37]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout).lines().count(), 3);
}

#[test]
fn solve_word_uses_the_two_stack_path_when_plain_verifies() {
    let out = rsym(&["solve-word", "--word", "(xy)^8", "--word", "x y (xy)^8 Y x", "--word", "xyxY", &pres("tri_3_8")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text(&out.stdout), "(xy)^8\ttrue\nx y (xy)^8 Y x\ttrue\nxyxY\tfalse\n");
}

#[test]
fn solve_word_refuses_without_a_verified_solver() {
    let out = rsym(&["solve-word", "--mode", "plain", "--word", "xy", &pres("tri_3_7")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("refusing"));
    let out = rsym(&["solve-word", "--word", "x q", &pres("tri_3_7")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_check_runs_clean_and_respects_the_ceiling() {
    let out = rsym(&["oracle-check", "--max-faces", "3", "--epsilon", "1/4", &pres("tri_4_5")]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stdout));
    assert!(text(&out.stdout).contains("violations: 0"));
    let out = rsym(&["oracle-check", "--max-faces", "9", &pres("tri_4_5")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiments_are_seeded() {
    let (a, b) = (scratch("exp-a.json"), scratch("exp-b.json"));
    let run = |p: &PathBuf, extra: &[&str]| {
        let mut args = extra.to_vec();
        args.extend(["experiment", "--preset", "f2-m2-n30", "--trials", "6", "--seed", "3", "--report", p.to_str().unwrap()]);
        rsym(&args)
    };
    let (oa, ob) = (run(&a, &[]), run(&b, &["--sequential"]));
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let list = rsym(&["experiment", "--list"]);
    assert_eq!(text(&list.stdout).lines().count(), 60);
    assert_eq!(rsym(&["experiment", "--preset", "nope"]).status.code(), Some(2));
}
