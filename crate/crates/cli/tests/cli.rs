use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn biunitary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biunitary")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn factor_and_sigma() {
    let o = biunitary(&["factor", "2160"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2160 = 2^4 * 3^3 * 5\n");

    let o = biunitary(&["sigma", "2160"]);
    assert_eq!(stdout(&o), "6480 (ratio 3/1)\n");
    let o = biunitary(&["sigma", "87360", "--class", "unitary"]);
    assert_eq!(stdout(&o), "174720 (ratio 2/1)\n");
    let o = biunitary(&["divisors", "16"]);
    assert_eq!(stdout(&o), "1 2 8 16\n");
}

#[test]
fn zsigmondy_queries() {
    assert_eq!(stdout(&biunitary(&["zsigmondy", "2", "6"])), "exception: (2,6)\n");
    assert_eq!(stdout(&biunitary(&["zsigmondy", "2", "3", "--sign", "plus"])), "exception: (2,3)\n");
    assert_eq!(stdout(&biunitary(&["zsigmondy", "2", "4"])), "primitive: 5 (≡1 mod 4)\n");
}

#[test]
fn search_prints_records() {
    let o = biunitary(&["search", "--k", "3", "--bound", "2200"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "k=3 class=BIUNITARY n=120 sigma=360 fact=2^3*3*5\n\
         k=3 class=BIUNITARY n=672 sigma=2016 fact=2^5*3*7\n\
         k=3 class=BIUNITARY n=2160 sigma=6480 fact=2^4*3^3*5\n"
    );
    let o = biunitary(&["search", "--k", "2", "--bound", "10000", "--format", "text"]);
    assert_eq!(stdout(&o), "6 = 2 * 3\n60 = 2^2 * 3 * 5\n90 = 2 * 3^2 * 5\n");
}

#[test]
fn bad_flag_value_names_the_flag() {
    let o = biunitary(&["search", "--k", "3", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: --bound:"), "{}", stderr(&o));
    let o = biunitary(&["search", "--k", "3", "--bound", "100", "--residue", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--residue"));
}

#[test]
fn verify_ledger_and_theorem_pass() {
    let o = biunitary(&["verify", "--suite", "ledger"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let total = out.lines().last().unwrap();
    let (passed, all) = total.strip_prefix("TOTAL ").unwrap().split_once('/').unwrap();
    assert_eq!(passed, all);

    let o = biunitary(&["verify", "--suite", "theorem", "--bound", "1000000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# theorem: hits [2160]"));
}

#[test]
fn verify_lemmas_reports_failures_with_exit_one() {
    let o = biunitary(&["verify", "--suite", "lemmas", "--n-max", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("lemma-24(I) ") && l.contains("FAIL")));
    assert!(out.lines().any(|l| l.starts_with("lemma-22 ") && l.contains("PASS")));
}

#[test]
fn export_bfile_from_stdin_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let records = stdout(&biunitary(&["search", "--k", "2", "--bound", "100000", "--class", "unitary"]));
    let out = dir.path().join("b.txt");

    let mut child = Command::new(env!("CARGO_BIN_EXE_biunitary"))
        .args(["export-bfile", "--input", "-", "--out", out.to_str().unwrap()])
        .stdin(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(records.as_bytes()).unwrap();
    assert!(child.wait().unwrap().success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "1 6\n2 60\n3 90\n4 87360\n");

    let input = dir.path().join("bad.txt");
    fs::write(&input, records.replace("sigma=12 ", "sigma=13 ")).unwrap();
    let o = biunitary(&["export-bfile", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--input line 1"), "{}", stderr(&o));
}

#[test]
fn halted_search_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("run.ckpt");
    let ckpt = ckpt.to_str().unwrap();
    let args = ["search", "--k", "3", "--bound", "2200", "--segment", "500", "--checkpoint", ckpt];

    let mut halted = args.to_vec();
    halted.extend(["--halt-after", "2"]);
    let o = biunitary(&halted);
    assert!(o.status.success());
    assert!(stderr(&o).contains("halted"));
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = biunitary(&args);
    assert!(o.status.success());
    let full = biunitary(&["search", "--k", "3", "--bound", "2200"]);
    assert_eq!(stdout(&o), stdout(&full));
}
