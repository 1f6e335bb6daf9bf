mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use dpll_core::oracle::check_model;
use dpll_core::CnfFormula;

fn solver() -> Command {
    Command::new(env!("CARGO_BIN_EXE_solver"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn model_from_output(stdout: &str, vars: usize) -> Vec<bool> {
    let literals: Vec<i32> = stdout
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .flat_map(|l| l.split_whitespace().map(|t| t.parse::<i32>().unwrap()))
        .collect();
    assert_eq!(literals.last(), Some(&0));
    let literals = &literals[..literals.len() - 1];
    assert_eq!(literals.len(), vars);
    literals
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            assert_eq!(l.unsigned_abs() as usize, i + 1);
            l > 0
        })
        .collect()
}

fn generate(args: &[&str]) -> String {
    let out = solver().arg("gen").args(args).output().unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

fn status_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .find(|l| l.starts_with("s "))
        .unwrap_or("")
        .to_string()
}

#[test]
fn example_file_is_satisfiable() {
    let path = write_temp("example.cnf", common::EXAMPLE_DIMACS);
    let out = solver().arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "s SATISFIABLE\nv 1 -2 -3 4 5 -6 -7\nv 0\n");
    let model = model_from_output(&stdout, 7);
    assert_eq!(check_model(&common::example(), &model), Ok(true));
}

#[test]
fn generated_pigeonhole_is_unsat() {
    let text = generate(&["php", "6"]);
    assert!(text.starts_with("p cnf 42 133\n"));
    let path = write_temp("hole6.cnf", &text);
    let out = solver().arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(20));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s UNSATISFIABLE\n");
}

#[test]
fn generated_queens_model_checks() {
    let text = generate(&["queens", "8"]);
    let formula: CnfFormula = text.parse().unwrap();
    let path = write_temp("queens8.cnf", &text);
    let out = solver().args(["--checked"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    let model = model_from_output(&String::from_utf8(out.stdout).unwrap(), 64);
    assert_eq!(check_model(&formula, &model), Ok(true));
}

#[test]
fn empty_clause_file() {
    let path = write_temp("empty_clause.cnf", "p cnf 1 1\n0\n");
    let out = solver().arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(20));
    assert_eq!(status_line(&out), "s UNSATISFIABLE");
}

#[test]
fn reads_standard_input() {
    let mut child = solver()
        .arg("-")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"p cnf 2 2\n1 2 0\n-1 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "s SATISFIABLE\nv -1 2\nv 0\n"
    );
}

#[test]
fn parse_error_reports_line_and_exits_1() {
    let path = write_temp("bad.cnf", "c header next\np cnf 2 1\n1 two 0\n");
    let out = solver().arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn time_limit_reports_unknown() {
    let path = write_temp("hole11.cnf", &generate(&["php", "11"]));
    let out = solver()
        .args(["--time-limit", "0.2"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s UNKNOWN\n");
}

#[test]
fn trace_lines_precede_answer() {
    let path = write_temp("example_trace.cnf", common::EXAMPLE_DIMACS);
    let out = solver().arg("--trace").arg(&path).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.starts_with("c decide x1=T\nc propagate x2=F (clause 2)\n"),
        "{stdout}"
    );
    assert!(stdout.contains("\ns SATISFIABLE\n"));
}

#[test]
fn status_line_matches_exit_code() {
    let mut rng = common::rng(7);
    for i in 0..40 {
        let f = common::random_formula(&mut rng, 3..=8, 1..=30);
        let path = write_temp(&format!("agree_{i}.cnf"), &f.to_dimacs());
        let mut cmd = solver();
        if i % 2 == 0 {
            cmd.arg("--no-verify-model");
        }
        let out = cmd.arg(&path).output().unwrap();
        let expected = match out.status.code() {
            Some(10) => "s SATISFIABLE",
            Some(20) => "s UNSATISFIABLE",
            other => panic!("unexpected exit status {other:?}"),
        };
        assert_eq!(status_line(&out), expected);
    }
}
