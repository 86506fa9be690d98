use std::fs;
use std::process::{Command, Output};

fn rootnot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootnot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn learn_quantum_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = rootnot(&[
        "learn-quantum",
        "--out",
        out,
        "--seeds",
        "1-2",
        "--override",
        "trial_budget=500",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("P10 median"));
    let series = fs::read_to_string(dir.path().join("learn-quantum/series.csv")).unwrap();
    assert!(series.starts_with("trial,seed,k,machine,M,P1,P5,P10\n"));
    assert!(dir.path().join("learn-quantum/curves.svg").exists());
}

#[test]
fn learn_classical_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# short run\nk = 4\ntrial_budget = 300\nseeds = 5\nk_s = 0.5\nk_f = 0.5\n",
    )
    .unwrap();
    let o = rootnot(&[
        "learn-classical",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("classical k=4, 300 trials, 1 seeds"));
    let text = fs::read_to_string(dir.path().join("learn-classical/config.txt")).unwrap();
    assert!(text.contains("k_s=0.5"), "{text}");
}

#[test]
fn oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = rootnot(&["oracle-lemma", "--k", "2", "--n-max", "4", "--out", out]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(dir.path().join("lemma.csv"))
            .unwrap()
            .lines()
            .last()
            .unwrap(),
        "2,4,12288,144"
    );
    let o = rootnot(&["oracle-count", "--k", "2", "--out", out]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("agree"));
    assert!(fs::read_to_string(dir.path().join("count.csv"))
        .unwrap()
        .contains("2,4,4,256,4,256,true"));
}

#[test]
fn compare_reports_difference() {
    let dir = tempfile::tempdir().unwrap();
    let o = rootnot(&[
        "compare",
        "--k",
        "2",
        "--seeds",
        "1-3",
        "--override",
        "trial_budget=500",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("difference"));
    let csv = fs::read_to_string(dir.path().join("compare-k2.csv")).unwrap();
    assert!(csv.starts_with("trial,quantum_median,classical_median,difference\n"));
}

#[test]
fn failures_exit_nonzero_with_one_line() {
    let cases: [&[&str]; 4] = [
        &["learn-quantum", "--override", "k=3"],
        &["learn-quantum", "--override", "bogus=1"],
        &["learn-classical", "--config", "/nonexistent/run.cfg"],
        &["oracle-lemma", "--k", "4", "--n-max", "8"],
    ];
    for args in cases {
        let o = rootnot(args);
        assert!(!o.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
}

#[test]
fn unwritable_output_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = rootnot(&["oracle-count", "--out", blocker.join("sub").to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("file"));
}
