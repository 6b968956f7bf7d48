use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gyroloop::constructions::{chein_double, cyclic, dihedral, klein_four};
use gyroloop::fixtures::g16;
use gyroloop::table::Loop;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gyroloop"))
        .args(args)
        .env_remove("GYROLOOP_TIME_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, l: &Loop) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, l.table().to_text(Some(name))).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn isgyro_and_gyr_on_g16() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g16", &g16());
    let o = run(&["isgyro", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g16: true"));

    let o = run(&["gyr", s(&f), "--pair", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(3,7)(4,5)(9,16)(10,11)");

    let o = run(&["gyrtable", s(&f)]);
    let text = stdout(&o);
    assert!(text.starts_with("Non-identity automorphisms are as follows:\nA = "));
    assert_eq!(text.lines().count(), 1 + 5 + 16);
}

#[test]
fn predicate_false_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m12", &chein_double(&dihedral(3)));
    let o = run(&["isgyro", s(&m)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("false"));
    assert_eq!(run(&["derived", s(&m)]).status.code(), Some(1));

    let a = write(dir.path(), "c4", &cyclic(4));
    let b = write(dir.path(), "v4", &klein_four());
    let o = run(&["iso", s(&a), s(&b)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["iso", s(&a), s(&a)]).status.code(), Some(0));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2\n0 1\n1 1\n").unwrap();
    assert_eq!(run(&["validate", s(&bad)]).status.code(), Some(1));
    assert_eq!(run(&["validate", s(&a), s(&b)]).status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["props", "/nonexistent/file.txt"]).status.code(), Some(2));
    assert_eq!(run(&["gyr", "/nonexistent", "--pair", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c3", &cyclic(3));
    assert_eq!(run(&["gyr", s(&f), "--pair", "1,9"]).status.code(), Some(2));
    assert_eq!(run(&["gyr", s(&f), "--pair", "x"]).status.code(), Some(2));
}

#[test]
fn enumerate_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("bol8.txt");
    let o = run(&["enumerate", "--order", "8", "--non-associative", "--out", s(&corpus)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&corpus).unwrap();
    assert_eq!(text.matches("# name: bol8_").count(), 6);

    let csv = dir.path().join("r.csv");
    let o = run(&["classify", s(&corpus), "--out", s(&csv), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(&csv).unwrap();
    assert!(report.ends_with("order,alpha,beta,status\n8,6,3,complete\n"));

    let json = dir.path().join("r.json");
    run(&["classify", s(&corpus), "--out", s(&json), "--format", "json"]);
    let again = dir.path().join("r2.json");
    run(&["classify", s(&corpus), "--out", s(&again), "--format", "json"]);
    assert_eq!(std::fs::read(&json).unwrap(), std::fs::read(&again).unwrap());

    let o = run(&["sweep-commutative", s(&corpus)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 counterexample(s)"));
}

#[test]
fn props_aut_and_derived() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s3", &dihedral(3));
    let o = run(&["props", s(&f)]);
    assert!(stdout(&o).contains("s3\t6\tyes\tyes\tyes\tyes"));
    let o = run(&["aut", s(&f)]);
    assert!(stdout(&o).starts_with("order 6\n"));
    let o = run(&["derived", s(&f)]);
    let out = stdout(&o);
    assert!(out.contains("order: 3") && out.contains("normal: true"));
}
