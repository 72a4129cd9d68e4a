//! The binary's observable contract: outputs, exit codes and file handling.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn oredeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oredeg")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_oredeg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = oredeg(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_and_analyze_a_star() {
    let text = gen(&["--kind", "star", "--n", "10", "--r", "3"]);
    let o = with_stdin(&["analyze", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "edges"), "36");
    assert!(field(&out, "sigma").starts_with("24"));
    assert_eq!(field(&out, "nu"), "1");
    assert_eq!(field(&out, "intersecting"), "yes");
    assert_eq!(field(&out, "trivial-star"), "center 1");
}

#[test]
fn analyze_reads_files_and_key_value_output() {
    let dir = tempfile::tempdir().unwrap();
    let cover = gen(&["--kind", "cover", "--n", "12", "--r", "3", "--T", "1,2,3"]);
    let path = write_temp(&dir, "cover.hgf", &cover);
    let out = stdout(&oredeg(&["analyze", &path, "--format", "kv"]));
    assert!(out.lines().any(|l| l == "nu=3"));
    assert!(out.lines().any(|l| l.starts_with("sigma=81")));
    assert!(out.lines().any(|l| l == "intersecting=no"));
}

#[test]
fn fano_is_regular_and_intersecting() {
    let text = gen(&["--kind", "fano"]);
    let out = stdout(&with_stdin(&["analyze"], &text));
    assert_eq!(field(&out, "edges"), "7");
    assert_eq!(field(&out, "regular"), "3");
    assert_eq!(field(&out, "intersecting"), "yes");
    assert_eq!(field(&out, "trivial-star"), "no");
}

#[test]
fn verify_confirms_a_star_at_equality() {
    let text = gen(&["--kind", "star", "--n", "10", "--r", "3"]);
    let o = with_stdin(&["verify", "T1.4", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CONFIRMED"));
}

#[test]
fn verify_reports_vacuous_below_the_threshold() {
    let text = gen(&["--kind", "cover", "--n", "12", "--r", "3", "--T", "1,2,3"]);
    let o = with_stdin(&["verify", "T1.6", "-", "--s", "4"], &text);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("VACUOUS"));
    assert!(!out.contains("CONFIRMED"));
}

#[test]
fn violating_instance_exits_two() {
    // n = 9 triples meeting {1,2,3} at least twice exceed the r >= 4 cap
    let mut text = String::from("hgf 1\n9 3 19\n");
    let mut count = 0;
    for a in 1..=9 {
        for b in a + 1..=9 {
            for c in b + 1..=9 {
                if [a, b, c].iter().filter(|&&v| v <= 3).count() >= 2 {
                    text.push_str(&format!("{a} {b} {c}\n"));
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 19);
    let o = with_stdin(&["verify", "T2.7", "-"], &text);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("VIOLATION"));
    assert!(out.contains("OUT_OF_DOMAIN"));
}

#[test]
fn pair_entries_take_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_temp(&dir, "a.hgf", &gen(&["--kind", "star", "--n", "8", "--r", "3"]));
    let b = write_temp(
        &dir,
        "b.hgf",
        &gen(&["--kind", "star", "--n", "8", "--r", "3", "--x", "2"]),
    );
    let o = oredeg(&["verify", "T1.9D", &a, &b]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(oredeg(&["verify", "T1.9D", &a]).status.code(), Some(1));
}

#[test]
fn tightness_and_exhaustive_modes() {
    let o = oredeg(&["verify", "T1.4", "--tightness", "--n", "10", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: CONFIRMED"));
    let o = oredeg(&["verify", "L5.1", "--exhaustive", "--n", "2..5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violation=0"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(oredeg(&["hunt", "T1.4", "--r", "3", "--n", "8"]).status.code(), Some(1));
    assert_eq!(oredeg(&["verify", "X9.9", "-"]).status.code(), Some(1));
    assert_eq!(
        oredeg(&["gen", "--kind", "star", "--n", "4", "--r", "6"]).status.code(),
        Some(1)
    );
    assert_eq!(oredeg(&["analyze", "/nonexistent/file.hgf"]).status.code(), Some(1));
    assert_eq!(
        with_stdin(&["analyze", "-"], "hgf 1\n3 2 1\n1 9\n").status.code(),
        Some(1)
    );
    assert_eq!(oredeg(&["--help"]).status.code(), Some(0));
}

#[test]
fn hunt_writes_a_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = oredeg(&[
        "hunt",
        "T1.4",
        "--r",
        "3",
        "--n",
        "8",
        "--seed",
        "3",
        "--budget",
        "2000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(&path).unwrap();
    assert!(report.starts_with("hunt-report 1\n"));
    assert!(o.stdout.is_empty());
}

#[test]
fn list_names_every_entry() {
    let out = stdout(&oredeg(&["list"]));
    assert!(out.lines().any(|l| l.starts_with("T1.4 ")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("C8.1 ") && l.ends_with("[conjecture]")));
}
