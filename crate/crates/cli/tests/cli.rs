use std::path::Path;
use std::process::{Command, Output};

fn cellball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellball"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let out = cellball(&["check", "1,0,0,1,0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("ball: admissible"));

    let out = cellball(&["check", "1,0,1,0,1,0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("first failing condition: (3)"));

    let out = cellball(&["check", "--sphere", "1,0,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("sphere: admissible"));

    assert_eq!(code(&cellball(&["check", "1,,0"])), 2);
    assert_eq!(code(&cellball(&["check"])), 2);
    assert_eq!(code(&cellball(&["--quiet", "check", "1,0,0"])), 0);
}

#[test]
fn realize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("ball.poset");
    let trace = dir.path().join("ball.trace");

    let out = cellball(&[
        "realize",
        "1,1,1,2,0",
        "--out",
        path(&poset),
        "--trace",
        path(&trace),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("case: Case 3"), "{text}");
    assert!(text.contains("n = 1, m = 3, s = (1)"), "{text}");
    assert!(poset.exists() && trace.exists());

    let out = cellball(&["verify", path(&poset), path(&trace), "1,1,1,2,0"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: certified"));

    let out = cellball(&["verify", path(&poset), path(&trace), "1,1,2,1,0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(c) h-vector equals the claim: FAIL"));

    let full = std::fs::read_to_string(&poset).unwrap();
    let truncated = dir.path().join("truncated.poset");
    std::fs::write(&truncated, &full[..full.len() / 2]).unwrap();
    let out = cellball(&["verify", path(&truncated), path(&trace), "1,1,1,2,0"]);
    assert_eq!(code(&out), 2);

    let missing = dir.path().join("missing.poset");
    assert_eq!(
        code(&cellball(&[
            "verify",
            path(&missing),
            path(&trace),
            "1,1,1,2,0"
        ])),
        2
    );
    assert_eq!(
        code(&cellball(&[
            "verify",
            path(&trace),
            path(&trace),
            "1,1,1,2,0"
        ])),
        2
    );
}

#[test]
fn realize_cases_and_refusal() {
    let out = cellball(&["realize", "1,0,0,0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("case: Case 1"));
    assert!(stdout(&out).contains("facets: 1"));

    let out = cellball(&["realize", "1,0,1,0,1,0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(3)"));
}

#[test]
fn info_reports_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("p.poset");

    assert_eq!(
        code(&cellball(&["realize", "1,0,0,0,0", "--out", path(&poset)])),
        0
    );
    let out = cellball(&["info", path(&poset)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("f = (1,4,6,4,1)"));
    assert!(stdout(&out).contains("h = (1,0,0,0,0)"));

    assert_eq!(
        code(&cellball(&["realize", "1,0,0,1,0", "--out", path(&poset)])),
        0
    );
    let out = cellball(&["info", path(&poset)]);
    assert!(stdout(&out).contains("h = (1,0,0,1,0)"));
    assert!(stdout(&out).contains("boundary of h = (1,0,0,1)"));

    // Two vertices joined by two edges.
    std::fs::write(
        &poset,
        "cellposet 1\nd 2\nn 4\ne 0 1 -\ne 1 1 -\ne 2 2 0,1\ne 3 2 0,1\n",
    )
    .unwrap();
    let out = cellball(&["info", path(&poset)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("h = (1,0,1)"));
    assert!(stdout(&out).contains("boundary: empty"));
}

#[test]
fn sweep_tables() {
    let out = cellball(&["sweep", "--d", "2", "--facets", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1,1,0\tcertified"));
    assert!(text.contains("1,2,0\tcertified"));

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sweep.tsv");
    let out = cellball(&["sweep", "--d", "4", "--facets", "8", "--out", path(&table)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let tsv = std::fs::read_to_string(&table).unwrap();
    assert!(tsv.starts_with("h\tverdict\tfailing\tfacets\telements\twall_ms\n"));
    assert!(!tsv.contains("FAILED"));

    let again = cellball(&["sweep", "--d", "4", "--facets", "8", "--quiet"]);
    assert_eq!(code(&again), 0);
    assert_eq!(code(&cellball(&["sweep", "--d", "0"])), 2);
}
