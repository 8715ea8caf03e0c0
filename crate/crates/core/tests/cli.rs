//! The `sqlp` binary end to end.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn animals() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/animals.sqlp")
}

fn sqlp(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sqlp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn answer_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text
        .lines()
        .map(|l| l.trim_start_matches("sqlp> "))
        .filter(|l| l.starts_with('{'))
        .map(str::to_string)
        .collect();
    v.sort();
    v
}

const PET: &str = "pet(A)#W | W >= 0.50";

#[test]
fn run_reproduces_the_session() {
    let path = animals();
    let o = sqlp(&["run", path.to_str().unwrap(), "--goal", PET], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        answer_lines(&out),
        vec![
            "{A -> cat, W -> 0.56}",
            "{A -> cat, W -> 0.72}",
            "{A -> lynx, W -> 0.576}",
            "{A -> lynx, W -> 0.576}"
        ]
    );
    assert_eq!(out.lines().last(), Some("4 answers (complete)"));
}

#[test]
fn repl_and_batch_print_the_same_answers() {
    let path = animals();
    let batch = stdout(&sqlp(&["run", path.to_str().unwrap(), "--goal", PET], ""));
    let script = format!(
        ":load {}\n:solve {PET}\ny\ny\ny\ny\n:quit\n",
        path.display()
    );
    let o = sqlp(&["repl"], &script);
    assert_eq!(o.status.code(), Some(0));
    let repl = stdout(&o);
    assert_eq!(answer_lines(&repl), answer_lines(&batch));
    assert_eq!(repl.matches("more solutions (y/n)?").count(), 4);
    assert!(repl.contains("4 answers (complete)"));
}

#[test]
fn repl_stops_on_no() {
    let path = animals();
    let script = format!(":load {}\n:solve {PET}\nn\n:quit\n", path.display());
    let repl = stdout(&sqlp(&["repl"], &script));
    assert_eq!(answer_lines(&repl).len(), 1);
}

#[test]
fn repl_diagnostics_keep_the_loop_alive() {
    let script = ":solve pet(A)#W\n:nonsense\n:load /no/such/file.sqlp\n:model\n:quit\n";
    let o = sqlp(&["repl"], script);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("no program loaded"));
    assert!(out.contains(":set depth|answers <n>"));
    assert!(out.contains("error: /no/such/file.sqlp"));
}

#[test]
fn transform_is_deterministic_and_complete() {
    let path = animals();
    let first = sqlp(&["transform", path.to_str().unwrap()], "");
    let second = sqlp(&["transform", path.to_str().unwrap()], "");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert_eq!(text.lines().next(), Some("#domain U"));
    assert_eq!(text.lines().filter(|l| l.ends_with('.')).count(), 27);
    assert!(!text.contains("sim2"));
    let annotated = stdout(&sqlp(
        &["transform", path.to_str().unwrap(), "--provenance"],
        "",
    ));
    assert!(annotated
        .contains("domestic(lynx) <-0.8- pay_0.8.  % source line 11, head variant degree 0.8"));
    let full = stdout(&sqlp(
        &["transform", path.to_str().unwrap(), "--full-sim-clauses"],
        "",
    ));
    assert!(full.contains("sim2(X, X) <-1.0-."));
}

#[test]
fn model_lists_the_least_model() {
    let path = animals();
    let out = stdout(&sqlp(&["model", path.to_str().unwrap()], ""));
    assert!(out.lines().any(|l| l == "domestic(lynx) # 0.64"));
    assert!(out.lines().any(|l| l == "pet(lynx) # 0.576"));
    let mut sorted: Vec<&str> = out.lines().collect();
    sorted.sort();
    assert_eq!(sorted, out.lines().collect::<Vec<_>>());
}

#[test]
fn check_reports_domains() {
    let o = sqlp(&["check", "--domain", "Wq"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strict decrease fails"));
    let path = animals();
    assert!(stdout(&sqlp(&["check", path.to_str().unwrap()], "")).starts_with("U: all axioms hold"));
}

#[test]
fn exit_codes() {
    let missing = sqlp(&["run", "missing.sqlp", "--goal", "p#W"], "");
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.sqlp"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sqlp");
    std::fs::write(&bad, "#domain U\nwild(lynx) <-1.5-.\n").unwrap();
    let o = sqlp(&["run", bad.to_str().unwrap(), "--goal", "wild(A)#W"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 14"));

    let path = animals();
    let p = path.to_str().unwrap();
    assert_eq!(sqlp(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(
        sqlp(&["run", p, "--goal", PET, "--max-depth", "x"], "")
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        sqlp(&["run", p, "--goal", PET, "--expect-answers", "5"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        sqlp(&["run", p, "--goal", PET, "--expect-answers", "4"], "")
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn solver_flags() {
    let path = animals();
    let p = path.to_str().unwrap();
    let plain = stdout(&sqlp(&["run", p, "--goal", PET], ""));
    let unpruned = stdout(&sqlp(&["run", p, "--goal", PET, "--no-prune"], ""));
    assert_eq!(plain, unpruned);
    let deepening = stdout(&sqlp(
        &["run", p, "--goal", PET, "--iterative-deepening"],
        "",
    ));
    assert_eq!(answer_lines(&plain), answer_lines(&deepening));
    let limited = stdout(&sqlp(&["run", p, "--goal", PET, "--max-answers", "1"], ""));
    assert_eq!(
        limited.lines().last(),
        Some("1 answers (stopped at answer limit)")
    );

    let dir = tempfile::tempdir().unwrap();
    let nat = dir.path().join("nat.sqlp");
    std::fs::write(&nat, "#domain U\nnat(z) <-1-.\nnat(s(X)) <-1- nat(X).\n").unwrap();
    let truncated = stdout(&sqlp(
        &[
            "run",
            nat.to_str().unwrap(),
            "--goal",
            "nat(N)#W",
            "--max-depth",
            "5",
        ],
        "",
    ));
    assert_eq!(
        truncated.lines().last(),
        Some("2 answers (search truncated at depth 5)")
    );
}
