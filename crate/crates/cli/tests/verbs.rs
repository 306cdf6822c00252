//! End-to-end behaviour of each verb through the built binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn z4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z4codes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn factor_lists_three_factors_and_eight_divisors() {
    let o = z4(&["factor", "--n", "7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("n=7 r=3\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("factor ")).count(), 3);
    assert!(out.contains("divisors: 8\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("divisor ")).count(), 8);
    assert!(out.contains("z2=11 z4=31"));
}

#[test]
fn usage_and_validation_errors_exit_2() {
    assert_eq!(z4(&["transmogrify"]).status.code(), Some(2));
    assert_eq!(z4(&["factor"]).status.code(), Some(2));
    assert_eq!(z4(&["factor", "--n", "8"]).status.code(), Some(2));
    assert_eq!(z4(&["--workers", "0", "factor", "--n", "7"]).status.code(), Some(2));
    assert_eq!(z4(&["verify", "--record", "not a record"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.tsv");
    let o = z4(&["--ci", "qc-search", "--m", "5", "--l", "2", "--seeds", "free", "--trials", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn missing_files_exit_3() {
    assert_eq!(z4(&["verify", "--records", "/nonexistent/rows.tsv"]).status.code(), Some(3));
    assert_eq!(z4(&["distance", "--code", "/nonexistent/code.txt"]).status.code(), Some(3));
}

#[test]
fn verify_mismatch_exits_1() {
    let line = "31\t26\t0\t5\tcyclic-free\t-\t-\t323001\t-\tfalse\t-";
    let o = z4(&["verify", "--record", line]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [31,26,0,5]"));
}

#[test]
fn verify_free_qc_row_reports_d_12() {
    let line = "22\t10\t0\t12\tqc-free\t11\t2\t31\t2101311121;1123112011\tfalse\tdecent";
    let o = z4(&["verify", "--record", line, "--bklc", fixture("bklc_fixture.csv").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS [22,10,0,12] qc-free: gray_linear=false d=12"));
}

#[test]
fn extra_rows_reproduce() {
    let o = z4(&["verify", "--records", fixture("extra_rows.tsv").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("verify: 5 passed, 0 failed"));
}

#[test]
#[ignore = "enumerates 2^32 words; run with --ignored"]
fn heavy_rows_reproduce_with_a_large_budget() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.tsv");
    let text = std::fs::read_to_string(fixture("structural_rows.tsv")).unwrap();
    let heavy: String = text.lines().filter(|l| l.starts_with("51\t")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&rows, heavy).unwrap();
    let o = z4(&["--budget", "8589934592", "verify", "--records", rows.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn distance_of_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.txt");
    std::fs::write(&code, "1011\n0123\n").unwrap();
    for engine in ["direct", "dual", "auto"] {
        let o = z4(&["distance", "--code", code.to_str().unwrap(), "--engine", engine]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with("n=4 k1=2 k2=0 d=3"), "{}", stdout(&o));
    }
}

#[test]
fn search_classify_and_database_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let o = z4(&["-q", "cyclic-search", "--n-min", "7", "--n-max", "7", "--out", &p("c7.tsv")]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(p("c7.tsv")).unwrap();
    assert_eq!(text.lines().count(), 25);

    std::fs::write(p("t.csv"), "n,k,d_best,d_upper\n14,12,2,2\n14,6,6,6\n").unwrap();
    let o = z4(&["-q", "classify", "--records", &p("c7.tsv"), "--bklc", &p("t.csv"), "--out", &p("c7c.tsv")]);
    assert!(o.status.success());
    let classified = std::fs::read_to_string(p("c7c.tsv")).unwrap();
    assert!(classified.lines().any(|l| l.starts_with("7\t6\t0\t2\t") && l.ends_with("\tfalse\tdecent")), "{classified}");

    let o = z4(&["db", "merge", "--db", &p("db.tsv"), "--records", &p("c7c.tsv")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("new=16 improved=0 tied=9"));
    let o = z4(&["db", "merge", "--db", &p("db.tsv"), "--records", &p("c7c.tsv")]);
    assert!(stdout(&o).contains("new=0 improved=0 tied=25"));

    let o = z4(&["db", "query", "--db", &p("db.tsv"), "--n", "7", "--k1", "6", "--k2", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = z4(&["db", "query", "--db", &p("db.tsv"), "--n", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());

    let o = z4(&["db", "export", "--db", &p("db.tsv"), "--out", &p("export.tsv")]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(p("export.tsv")).unwrap(), std::fs::read(p("db.tsv")).unwrap());
}

#[test]
fn corrupt_database_is_left_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("db.tsv");
    std::fs::write(&db, "this is not a record\n").unwrap();
    let rows = fixture("reference_rows.tsv");
    let o = z4(&["db", "merge", "--db", db.to_str().unwrap(), "--records", rows.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read_to_string(&db).unwrap(), "this is not a record\n");
}

#[test]
fn config_file_supplies_paths_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("qc.tsv");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!("rng_seed = 11\nworkers = 2\n[policy]\nlength_cutoff = 61\n[paths]\nout = {:?}\n", out.to_str().unwrap()),
    )
    .unwrap();
    let o = z4(&["--ci", "--config", cfg.to_str().unwrap(), "qc-search", "--m", "5", "--l", "2", "--seeds", "free", "--trials", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read(&out).unwrap();
    let o = z4(&["--ci", "--config", cfg.to_str().unwrap(), "qc-search", "--m", "5", "--l", "2", "--seeds", "free", "--trials", "3", "--rng-seed", "11"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), first);

    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(z4(&["--config", cfg.to_str().unwrap(), "factor", "--n", "7"]).status.code(), Some(2));
}
