use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn arsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arsub"))
        .args(args)
        .output()
        .expect("arsub runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dtr_of_simple_injective_is_simple_projective() {
    let o = arsub(&["dtr", "--algebra", &data("a2.alg"), "--module", &data("s1.mod")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim 0 1"), "{}", s);
}

#[test]
fn dtr_at_projective_is_zero() {
    let o = arsub(&["dtr", "--algebra", &data("a2.alg"), "--module", &data("p1.mod")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 0 0"));
}

#[test]
fn global_sequence_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let ses = dir.path().join("ses.txt");
    let o = arsub(&[
        "ar-global",
        "--algebra",
        &data("a2.alg"),
        "--module",
        &data("s1.mod"),
        "--out",
        ses.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = arsub(&["verify-ar", "--algebra", &data("a2.alg"), "--module", ses.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict=pass"));
}

#[test]
fn split_sequence_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let ses = dir.path().join("split.txt");
    std::fs::write(
        &ses,
        "module X\ndim 0 1\nmap a 1 0\n\
         module Y\ndim 1 1\nmap a 1 1\n0\n\
         module Z\ndim 1 0\nmap a 0 1\n\
         morphism g X Y\nat 1 1 0\nat 2 1 1\n1\n\
         morphism f Y Z\nat 1 1 1\n1\nat 2 0 1\n",
    )
    .unwrap();
    let o = arsub(&["verify-ar", "--algebra", &data("a2.alg"), "--module", ses.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("non_split=false"));
}

#[test]
fn end_term_harness_on_kronecker_postprojectives() {
    let o = arsub(&["theorem51", "--algebra", &data("kron.alg"), "--subcat", &data("pp13.sub")]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{}", s);
    assert!(s.contains("row M=trd(P1) i=pass ii=pass agree=true"), "{}", s);
    assert!(!s.contains("agree=false"));
}

#[test]
fn start_term_harness_on_kronecker_preinjectives() {
    let o = arsub(&["theorem55", "--algebra", &data("kron.alg"), "--subcat", &data("pi13.sub")]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{}", s);
    assert!(s.contains("row M=dtr(I1) i=pass ii=pass agree=true"), "{}", s);
    assert!(!s.contains("agree=false"));
}

#[test]
fn printed_module_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.mod");
    let o = arsub(&[
        "dtr",
        "--algebra",
        "kronecker",
        "--module",
        &data("s1.mod"),
        "--out",
        first.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o2 = arsub(&["trd", "--algebra", "kronecker", "--module", first.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0));
    let s = stdout(&o2);
    assert!(s.contains("dim 1 0"), "{}", s);
}

#[test]
fn hom_reports_dimension() {
    let o = arsub(&["hom", "--algebra", &data("a2.alg"), "--module", &data("p1.mod"), "--module", &data("s1.mod")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim Hom(P1, S1) = 1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(arsub(&["bogus"]).status.code(), Some(2));
    let o = arsub(&["dtr", "--algebra", "no-such-algebra", "--module", &data("s1.mod")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("pp3.sub");
    std::fs::write(&sub, "subcat postprojective cap 3\n").unwrap();
    let m = dir.path().join("p2.mod");
    std::fs::write(&m, "module S2\ndim 0 1\n").unwrap();
    let o = arsub(&["precover", "--algebra", "kronecker", "--subcat", sub.to_str().unwrap(), "--module", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn indecomposability_check_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("sum.mod");
    std::fs::write(&m, "module S\ndim 1 1\nmap a 1 1\n0\n").unwrap();
    assert_eq!(arsub(&["indec", "--algebra", &data("a2.alg"), "--module", m.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(arsub(&["indec", "--algebra", &data("a2.alg"), "--module", &data("p1.mod")]).status.code(), Some(0));
}
