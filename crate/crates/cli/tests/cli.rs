use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("motivic").chain(args.iter().copied());
    let code = motivic_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn zc3_both_routes_as_json() {
    let (code, out, err) = run(&["zc3", "--order", "2", "--route", "both", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["routes_agree"], Value::Bool(true));
    assert_eq!(v["text"][1], "1*L^(3/2)");
    assert_eq!(v["text"][2], "1*L^(6/2) + 1*L^(4/2) + 1*L^(2/2)");
    assert_eq!(v["series"]["order"], 2);
    assert!(err.contains("wall time"));
}

#[test]
fn flagship_suite_passes() {
    let (code, out, _) = run(&["verify", "--suite", "flagship", "--order", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass recursion_equals_product (order 8)"));
}

#[test]
fn macmahon_with_oracle() {
    let (code, out, _) = run(&["macmahon", "--delta", "0", "--order", "2", "--oracle", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["routes_agree"], Value::Bool(true));
    let expected: Value = serde_json::from_str(r#"[[1,"1"],[0,"1"],[-1,"1"]]"#).unwrap();
    assert_eq!(v["series"]["coeffs"][2], expected);
    assert_eq!(v["enumeration"]["coeffs"][2], expected);
}

#[test]
fn negative_half_integer_delta() {
    let (code, out, _) = run(&["macmahon", "--delta", "-3/2", "--order", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,q_half_exponent,coefficient\n0,0,1\n1,-3,1\n");
}

#[test]
fn partition_counts_as_csv() {
    let (code, out, _) = run(&["partitions", "count", "--dim", "3", "--n", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,count\n0,1\n1,1\n2,3\n3,6\n4,13\n");
}

#[test]
fn refined_enumeration_as_csv() {
    let (code, out, _) = run(&["partitions", "refined", "--n", "2", "--delta", "1/2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n,q_half_exponent,coefficient\n0,0,1\n1,1,1\n"));
}

#[test]
fn output_does_not_depend_on_threads() {
    let a = run(&["--threads", "1", "partitions", "count", "--dim", "4", "--n", "7", "--format", "json"]);
    let b = run(&["--threads", "3", "partitions", "count", "--dim", "4", "--n", "7", "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["partitions", "count", "--dim", "3", "--n", "15"]).0, 3);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["zc3"]).0, 2);
    assert_eq!(run(&["zx", "--class", "L^(1/3)", "--order", "2"]).0, 2);
    assert_eq!(run(&["zx", "--betti", "1,0,1,0,1,0,1", "--realize", "euler", "--order", "2"]).0, 2);
    assert_eq!(run(&["unified", "--dim", "4", "--class", "L^4", "--order", "4"]).0, 2);
    assert_eq!(run(&["--threads", "0", "zc3", "--order", "1"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn threefold_realizations() {
    let (code, out, _) = run(&["zx", "--class", "1+L+L^2+L^3", "--order", "3", "--realize", "euler", "--format", "csv"]);
    assert_eq!(code, 0);
    // M(-t)^4
    assert_eq!(out, "n,coefficient\n0,1\n1,-4\n2,18\n3,-64\n");
    let (_, weight, _) = run(&["zx", "--class", "1+L+L^2+L^3", "--order", "3", "--realize", "weight"]);
    let (_, betti, _) = run(&["zx", "--betti", "1,0,1,0,1,0,1", "--order", "3"]);
    assert_eq!(weight, betti);
}

#[test]
fn unified_and_guess() {
    let (code, out, _) = run(&["unified", "--dim", "0", "--class", "2", "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t^0: 1*L^(0/2)\nt^1: 2*L^(0/2)\nt^2: 1*L^(0/2)\nt^3: 0\n");
    let (code, out, _) = run(&["guess", "--dim", "4", "--order", "6", "--compare"]);
    assert_eq!(code, 0);
    assert!(out.contains("first mismatch at n = 6"));
}

#[test]
fn binary_honors_thread_environment() {
    let bin = env!("CARGO_BIN_EXE_motivic");
    let bad = Command::new(bin)
        .args(["zc3", "--order", "1"])
        .env("MOTIVIC_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let good = Command::new(bin)
        .args(["partitions", "count", "--dim", "2", "--n", "5"])
        .env("MOTIVIC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(String::from_utf8(good.stdout).unwrap(), "n = 0: 1\nn = 1: 1\nn = 2: 2\nn = 3: 3\nn = 4: 5\nn = 5: 7\n");
    let explicit = Command::new(bin)
        .args(["--threads", "1", "zc3", "--order", "1"])
        .env("MOTIVIC_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(explicit.status.code(), Some(0));
}
