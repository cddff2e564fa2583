use std::io::Write;
use std::process::{Command, Output};

use ldiag::{CoeffPoly, DiagElement, DiagramCode};
use ldiag_cli::{element_json_string, parse_element_json};
use proptest::prelude::*;
use tempfile::NamedTempFile;

fn ldiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn matrix_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn product_of_literals() {
    let o = ldiag(&["product", "[x1]", "[x1]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "qs * [x1*x2]\n1 * [x1, x2]\nqc * [x2, x1]\n");
    let o = ldiag(&["product", "[x1]", "[x1]", "--unshifted"]);
    assert_eq!(stdout(&o), "qs * [x1^2]\n1+qc * [x1, x1]\n");
    let o = ldiag(&["product", "[x1]", "[x1*x2]", "--qc", "0", "--qs", "0"]);
    assert_eq!(stdout(&o), "1 * [x1, x2*x3]\n");
}

#[test]
fn product_of_matrix_files() {
    let a = matrix_file("1\n");
    let b = matrix_file("1 1\n");
    let o = ldiag(&[
        "product",
        a.path().to_str().unwrap(),
        b.path().to_str().unwrap(),
        "--qc",
        "1",
        "--qs",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "1 * [x1*x2*x3]\n1 * [x1, x2*x3]\n1 * [x2*x3, x1]\n"
    );
}

#[test]
fn zero_element_prints_nothing() {
    // [x1] * [x1] at qc = -1, qs = 0 in the unshifted law: (1 - 1) [x1, x1]
    let o = ldiag(&[
        "product",
        "[x1]",
        "[x1]",
        "--unshifted",
        "--qc=-1",
        "--qs",
        "0",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
}

#[test]
fn coproducts() {
    let o = ldiag(&[
        "coproduct",
        "[x1, x2]",
        "--qc",
        "0",
        "--qs",
        "0",
        "--qt",
        "0",
    ]);
    assert_eq!(
        stdout(&o),
        "1 * [] (x) [x1, x2]\n2 * [x1] (x) [x1]\n1 * [x1, x2] (x) []\n"
    );
    let o = ldiag(&[
        "coproduct",
        "[x2, x1*x2]",
        "--qc",
        "1",
        "--qs",
        "1",
        "--qt",
        "1",
    ]);
    assert_eq!(
        stdout(&o),
        "1 * [] (x) [x2, x1*x2]\n1 * [x1] (x) [x1*x2]\n1 * [x2, x1*x2] (x) []\n"
    );
    let o = ldiag(&["coproduct", "[x1]", "--qt", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn antipodes() {
    let o = ldiag(&["antipode", "[x1, x2]", "--qc", "0", "--qs", "0"]);
    assert_eq!(stdout(&o), "1 * [x1, x2]\n");
    let o = ldiag(&["antipode", "[x1, x2]", "--explicit"]);
    assert_eq!(stdout(&o), "1 * [x1, x2]\n");
    let o = ldiag(&["antipode", "[]"]);
    assert_eq!(stdout(&o), "1 * []\n");
}

#[test]
fn verify_exit_codes() {
    let o = ldiag(&[
        "verify",
        "--qc",
        "0",
        "--qs",
        "0",
        "--qt",
        "0",
        "--max-lines",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: pass"));
    let o = ldiag(&["verify", "--qt", "1", "--max-lines", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("coassociativity        FAIL"));
    let o = ldiag(&["verify", "--max-lines", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ldiag(&[
        "--json",
        "verify",
        "--qc",
        "1",
        "--qs",
        "1",
        "--qt",
        "1",
        "--max-lines",
        "3",
        "--sample",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["seed"], 7);
}

#[test]
fn enumerate_classes() {
    let o = ldiag(&["enumerate", "--n", "2"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    let total: u64 = lines
        .iter()
        .map(|l| l.split('\t').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 4);
    assert!(lines.contains(&"1\t2"));
    assert!(lines.contains(&"1\t1 0;0 1"));
    let o = ldiag(&["enumerate", "--n", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn factorize_and_code() {
    let o = ldiag(&["factorize", "[x1, x2]"]);
    assert_eq!(stdout(&o), "[x1]\n[x1]\n");
    let m = matrix_file("0 2 1 0\n1 1 3 0\n0 0 1 2\n");
    let o = ldiag(&["code", m.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "[x2^2*x3, x1*x2*x3^3, x3*x4^2]\n");
    let o = ldiag(&["code", "[x1*x2]"]);
    assert_eq!(stdout(&o), "1 1\n");
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(ldiag(&["code", "[x2]"]).status.code(), Some(1));
    let bad = matrix_file("1 0\n1 0\n");
    assert_eq!(
        ldiag(&["code", bad.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
    let ragged = matrix_file("1 0\n1\n");
    assert_eq!(
        ldiag(&["code", ragged.path().to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ldiag(&["code", "/nonexistent/file.mat"]).status.code(),
        Some(1)
    );
    assert_eq!(ldiag(&["product", "[x1]"]).status.code(), Some(1));
    assert_eq!(
        ldiag(&["product", "[x1]", "[x1]", "--qc", "q"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ldiag(&["--help"]).status.code(), Some(0));
}

#[test]
fn zeta_command() {
    let o = ldiag(&["zeta", "--code", "[x1^2]", "--truncate", "1000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("value\t1.643934566"));
    let o = ldiag(&[
        "zeta",
        "--code",
        "[x1]",
        "--signs",
        "-",
        "--truncate",
        "1000000",
    ]);
    assert!(stdout(&o).contains("value\t-0.69314"));
    let o = ldiag(&["zeta", "--code", "[x1]", "--truncate", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ldiag(&[
        "zeta",
        "--code",
        "[x1^2]",
        "--truncate",
        "100000",
        "--check-stuffle",
        "[x1^3]",
    ]);
    assert!(stdout(&o).contains("stuffle\tpass"));
}

#[test]
fn json_element_output() {
    let o = ldiag(&["--json", "product", "[x1]", "[x1]", "--unshifted"]);
    let e = parse_element_json(&stdout(&o)).unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(
        e.coeff(&"[x1, x1]".parse().unwrap()),
        "1+qc".parse().unwrap()
    );
}

fn arb_element() -> impl Strategy<Value = DiagElement> {
    let codes = ldiag::codes_up_to(3);
    let term = (
        prop::sample::select(codes),
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 1..3),
    );
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let mut e = DiagElement::zero();
        for (c, coeffs) in terms {
            let mut p = CoeffPoly::zero();
            for ((a, b), k) in coeffs {
                p = p + CoeffPoly::monomial(k, a, b);
            }
            e.add_term(c, &p);
        }
        e
    })
}

proptest! {
    #[test]
    fn json_round_trip(e in arb_element()) {
        prop_assert_eq!(parse_element_json(&element_json_string(&e)).unwrap(), e);
    }
}

#[test]
fn json_rejects_non_codes() {
    let text = r#"[{"coeff": "1", "code": ["x2"]}]"#;
    assert!(parse_element_json(text).is_err());
    assert_eq!(parse_element_json("[]").unwrap(), DiagElement::zero());
    let unit = parse_element_json(r#"[{"coeff": "1", "code": []}]"#).unwrap();
    assert_eq!(unit, DiagElement::basis(DiagramCode::unit()));
}
