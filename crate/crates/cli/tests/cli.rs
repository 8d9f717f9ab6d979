use std::path::Path;
use std::process::{Command, Output};

fn bigal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigal"))
        .args(args)
        .output()
        .expect("bigal runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn even_or_trivial_n_is_a_configuration_error() {
    for big_n in ["4", "1"] {
        let o = bigal(&["run", "--N", big_n, "--suites", "hopf-axioms"]);
        assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
        assert!(stderr(&o).contains("N must be odd"));
    }
}

#[test]
fn unknown_suite_is_a_configuration_error() {
    let o = bigal(&["run", "--suites", "hopf-axioms,nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonsense"));
}

#[test]
fn malformed_manifest_matrix_is_rejected() {
    // determinant 2
    let o = bigal(&["run", "--g", "2,0;0,1", "--suites", "hopf-axioms"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("report.json");
    std::fs::write(
        &cfg,
        "# small run\nN = 3\nsuites = kernel-battery\ng = 1,1;0,1\njobs = 7\n",
    )
    .unwrap();
    let o = bigal(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--jobs",
        "1",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        report["config"]["suites"],
        serde_json::json!(["kernel-battery"])
    );
    assert_eq!(
        report["config"]["g_manifest"],
        serde_json::json!([[["1", "1"], ["0", "1"]]])
    );

    std::fs::write(&cfg, "N = 3\ncolour = blue\n").unwrap();
    let bad = bigal(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("colour"));
}

#[test]
fn report_subcommand_replays_a_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = bigal(&[
        "run",
        "--suites",
        "frobenius-seq",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let replay = bigal(&["report", out.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&replay.stdout)
    );

    let missing = bigal(&["report", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn corrupt_cache_entry_gives_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = bigal(&["run", "--suites", "hopf-axioms", "--cache-dir", cache]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    std::fs::write(&entry, "not json").unwrap();

    assert_eq!(
        bigal(&["cache", "verify", "--cache-dir", cache])
            .status
            .code(),
        Some(3)
    );
    let rerun = bigal(&["run", "--suites", "hopf-axioms", "--cache-dir", cache]);
    assert_eq!(rerun.status.code(), Some(3));
    assert!(stderr(&rerun).contains("error"));

    let cleared = bigal(&["cache", "clear", "--cache-dir", cache]);
    assert_eq!(cleared.status.code(), Some(0));
    assert!(is_empty(dir.path()));
}

fn is_empty(dir: &Path) -> bool {
    std::fs::read_dir(dir).unwrap().next().is_none()
}
