use std::path::{Path, PathBuf};
use std::process::Command;

use nszoo::cli::{run_command, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;
use tempfile::TempDir;

const TRANS: &str = "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0\n";

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nszoo").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[test]
fn parse_reports_and_rejects() {
    let d = TempDir::new().unwrap();
    let (code, out, _) = run(&["parse", &file(&d, "t.txt", TRANS)]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["internal"], false);
    let (code, _, err) = run(&["parse", &file(&d, "bad.txt", "!st f:1. (")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("syntax error"), "{}", err);
}

#[test]
fn print_is_canonical_and_needs_a_file() {
    let d = TempDir::new().unwrap();
    let (code, out, _) = run(&["print", &file(&d, "t.txt", "!st  f:1.(?n:0. app(f,n)=0) -> ?st m:0. app(f,m)=0")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, TRANS);
    let (code, _, _) = run(&["print", "/nonexistent/formula.txt"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn normalize_prints_the_trace() {
    let d = TempDir::new().unwrap();
    let path = file(&d, "t.txt", TRANS);
    let (code, out, _) = run(&["normalize", &path, "--logic", "intuitionistic"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("!st f:1. ?st m:0."), "{}", out);
    assert!(out.contains("HIPforallst"));
    let (code, _, _) = run(&["normalize", &path, "--logic", "modal"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn extract_emits_witnesses() {
    let d = TempDir::new().unwrap();
    let (code, out, _) = run(&["extract", &file(&d, "t.txt", TRANS)]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witnesses"][0]["term"], "t_m(f)");
    let (code, _, _) = run(&["extract", &file(&d, "u.txt", "app(g,0) = 0")]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn herbrandise_needs_a_uniform_antecedent() {
    let (code, out, _) = run(&["herbrandise", "UPi01G"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["o"], "o(Phi,Xi1,f)");
    let (code, _, _) = run(&["herbrandise", "Pi01G"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn meta_reverse_round_trips() {
    let (code, out, _) = run(&["meta-reverse", "UKPT"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("\"round_trip\": \"pass\""));
    let (code, _, _) = run(&["meta-reverse", "PI01-TRANS"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn catalog_lists_and_shows() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.lines().any(|l| l.starts_with("Pi01G")));
    let (code, out, _) = run(&["catalog", "show", "PI01-TRANS"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, TRANS);
    let (code, _, _) = run(&["catalog", "show", "NOPE"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn pipeline_passes_against_the_reference_directory() {
    let golden = golden_dir();
    let (code, out, _) = run(&["pipeline", "Pi01G", "--logic", "classical", "--golden", golden.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdicts"]["golden:structure"]["status"], "pass");
    assert_eq!(v["verdicts"]["soundness"]["status"], "skipped");
    assert_eq!(v["seed"], 0);
    assert!(v.get("timings").is_none());
}

#[test]
fn pipeline_fails_on_a_wrong_reference() {
    let d = TempDir::new().unwrap();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, d.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::write(d.path().join("structure.txt"), "!st f:1. app(f,0) = 0\n").unwrap();
    let (code, out, _) = run(&["pipeline", "Pi01G", "--logic", "classical", "--golden", d.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdicts"]["golden:structure"]["status"], "fail");
}

#[test]
fn pipeline_stage_failure_emits_a_partial_report() {
    let (code, out, err) = run(&["pipeline", "MU2", "--logic", "classical"]);
    assert_eq!(code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("uniformize"));
    assert!(err.contains("uniformize"));
}

#[test]
fn pipeline_text_format_lists_verdicts() {
    let (code, out, _) = run(&["pipeline", "DNR", "--logic", "classical", "--format", "text"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("pass     golden:frood"), "{}", out);
}

#[test]
fn model_check_rule_expects_an_idealisation_counterexample() {
    let (code, out, _) = run(&["model-check", "rule", "Idealisation", "--size", "3"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["expected"], "counterexample");
    assert_eq!(v["verdict"], "pass");
    let (code, _, _) = run(&["model-check", "rule", "HACint", "--size", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["model-check", "rule", "NoSuchRule"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn model_check_rule_dumps_counterexamples() {
    let d = TempDir::new().unwrap();
    let dump = d.path().join("cex.txt");
    let (code, _, _) = run(&["model-check", "rule", "Idealisation", "--pairs", "200", "--dump", dump.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let text = std::fs::read_to_string(dump).unwrap();
    assert!(text.contains("domain {0.."));
    assert!(text.contains("before (true)"));
}

#[test]
fn model_check_extraction_finds_false_sentences() {
    let d = TempDir::new().unwrap();
    let (code, out, _) = run(&["model-check", "extraction", &file(&d, "t.txt", TRANS), "--size", "3"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check"]["assignments"], 27);
    let (code, out, _) = run(&["model-check", "extraction", &file(&d, "f.txt", "!st x:0. ?st y:0. S(y) <= x\n")]);
    assert_eq!(code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check"]["violations"][0], "x = 0");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["pipeline", "Pi01G"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_PASS);
}

#[test]
fn environment_seed_overrides_the_flag() {
    let bin = env!("CARGO_BIN_EXE_nszoo");
    let output = Command::new(bin)
        .args(["pipeline", "DNR", "--logic", "classical", "--seed", "3"])
        .env("NSZOO_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["seed"], 17);
}
