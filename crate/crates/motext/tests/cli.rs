//! The `motext` binary: exit codes, summaries and byte-identical output.

use std::path::Path;
use std::process::{Command, Output};

fn motext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motext"))
        .args(args)
        .env_remove("MOTEXT_CACHE_DIR")
        .output()
        .expect("run motext")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn resolve_prints_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("m.ckpt");
    let o = motext(&["resolve", "--algebra", "motivic", "--max-stem", "20", "--out", p(&ckpt)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "dim(17,4,10)=1"));
    assert!(out.lines().any(|l| l == "dim(20,4,11)=1"));
    assert!(!out.contains("dim(20,4,12)"));
    assert!(ckpt.exists());

    let o = motext(&["resolve", "--algebra", "a2-motivic", "--max-stem", "24"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "dim(20,4,12)=1"));
}

#[test]
fn invalid_flags_exit_2() {
    for args in [
        &["resolve", "--max-stem", "-1"][..],
        &["resolve", "--algebra", "odd", "--max-stem", "4"],
        &["resolve"],
        &["chart", "--checkpoint", "x", "--format", "png"],
        &["bx"],
    ] {
        assert_eq!(motext(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn truncation_is_a_warning() {
    let o = motext(&["resolve", "--max-stem", "10", "--max-filtration", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let o = motext(&["resolve", "--max-stem", "10"]);
    assert!(stderr(&o).is_empty(), "{}", stderr(&o));
}

#[test]
fn resume_matches_a_direct_run() {
    let dir = tempfile::tempdir().unwrap();
    let (small, resumed, direct) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    let base = ["resolve", "--algebra", "motivic"];
    motext(&[&base[..], &["--max-stem", "8", "--out", p(&small)]].concat());
    let o = motext(&[&base[..], &["--max-stem", "14", "--resume", p(&small), "--out", p(&resumed)]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    motext(&[&base[..], &["--max-stem", "14", "--threads", "2", "--out", p(&direct)]].concat());
    assert_eq!(std::fs::read(&resumed).unwrap(), std::fs::read(&direct).unwrap());
    // Resuming a different algebra is refused.
    let o = motext(&["resolve", "--max-stem", "9", "--resume", p(&small)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn charts_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("m.ckpt");
    motext(&["resolve", "--algebra", "motivic", "--max-stem", "20", "--out", p(&ckpt)]);
    for format in ["tsv", "json", "svg"] {
        let a = motext(&["chart", "--checkpoint", p(&ckpt), "--format", format]);
        let b = motext(&["chart", "--checkpoint", p(&ckpt), "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let tsv = stdout(&motext(&["chart", "--checkpoint", p(&ckpt), "--format", "tsv"]));
    assert!(tsv.contains("17\t4\t10\t1\tx3 = e0g^0\n"));
    // Class files are classical only.
    let o = motext(&["chart", "--checkpoint", p(&ckpt), "--format", "classes"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_or_corrupt_checkpoints_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = motext(&["chart", "--checkpoint", p(&dir.path().join("none"))]);
    assert_eq!(o.status.code(), Some(1));

    // A tampered cache entry stops the checks before anything runs.
    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/classical-12.ckpt")).unwrap();
    let tampered = golden.replacen("\"t\":2", "\"t\":3", 1);
    std::fs::write(cache.join("classical-s16-t46.ckpt"), tampered).unwrap();
    let o = motext(&["verify", "paper-checks", "--cache-dir", p(&cache)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("checksum"), "{}", stderr(&o));
}

#[test]
fn capped_checks_are_inconclusive() {
    let o = motext(&["verify", "paper-checks", "--motivic-stem-cap", "16", "--budget-secs", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("x3 at (17,4,10)")).unwrap();
    assert!(line.starts_with("INCONCLUSIVE"), "{out}");
    assert!(!out.lines().any(|l| l.starts_with("FAIL")), "{out}");
}

#[test]
fn bx_from_a_class_file() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let o = motext(&[
        "bx",
        "--chart",
        p(&data.join("classical-12.classes.tsv")),
        "--intercept",
        "-4",
        "--prove",
        "q3*h0^3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("q1·h1^3 (4,4)"), "{out}");
    assert!(out.contains("q3·h0^3 (7,4): permanent cycle"), "{out}");
    let from_ckpt = motext(&["bx", "--checkpoint", p(&data.join("classical-12.ckpt")), "--intercept", "-4"]);
    assert_eq!(
        stdout(&from_ckpt),
        stdout(&motext(&["bx", "--chart", p(&data.join("classical-12.classes.tsv")), "--intercept", "-4"]))
    );
}

#[test]
fn products_and_scans() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("m.ckpt");
    motext(&["resolve", "--algebra", "motivic", "--max-stem", "18", "--out", p(&ckpt)]);
    let o = motext(&["products", "--checkpoint", p(&ckpt), "--left", "1,1,1", "--right", "1,1,1", "--scan", "17,4,10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("(1,1,1)[0] * (1,1,1)[0] = (2,2,2) [0]"), "{out}");
    assert!(out.contains("(17,4,10)[0] indecomposable"), "{out}");
}
