use std::path::PathBuf;
use std::process::Command;

use pairsim_cli::{exit, parse, CircuitDocument, ElementStmt, Expr, InputStmt, Sweep};
use pairsim_core::Statistics;
use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pairsim"))
}

fn circuits_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("circuits")
}

#[test]
fn scenarios_all_pass() {
    let out = bin().arg("scenarios").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn run_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("hom.csv");
    let status = bin()
        .arg("run")
        .arg(circuits_dir().join("hom_boson.circ"))
        .arg("--out")
        .arg(&target)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        std::fs::read_to_string(target).unwrap(),
        "param,0|2,1|1,2|0\n,0.5,0,0.5\n"
    );
}

#[test]
fn json_output() {
    let out = bin()
        .args(["run", "--format", "json"])
        .arg(circuits_dir().join("mzi_fermion.circ"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 64);
    assert_eq!(v["columns"], serde_json::json!(["1|1"]));
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.circ");
    std::fs::write(&bad, "stats boson\npaths 2\nbs 0 0\ninput fock 1 1\n").unwrap();
    let out = bin().arg("check").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::PARSE.into()));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:6:"));

    let out = bin()
        .arg("run")
        .arg(circuits_dir().join("same_port_fermion.circ"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::EVALUATION.into()));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Pauli exclusion"));

    let out = bin().args(["check", "/nonexistent/file.circ"]).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::IO.into()));
}

#[test]
fn check_and_fmt_accept_shipped_documents() {
    for entry in std::fs::read_dir(circuits_dir()).unwrap() {
        let path = entry.unwrap().path();
        assert!(bin().arg("check").arg(&path).status().unwrap().success());
        let out = bin().arg("fmt").arg(&path).output().unwrap();
        let printed = String::from_utf8(out.stdout).unwrap();
        let original = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse(&printed).unwrap(), original, "{}", path.display());
    }
}

fn expr(var: Option<&'static str>) -> BoxedStrategy<Expr> {
    let constant = prop_oneof![
        (-10.0..10.0f64).prop_map(Expr::Number),
        Just(Expr::Pi { divisor: None }),
        (1u32..16).prop_map(|d| Expr::Pi { divisor: Some(d) }),
    ];
    match var {
        Some(name) => prop_oneof![constant, Just(Expr::Var(name.to_string()))].boxed(),
        None => constant.boxed(),
    }
}

fn document() -> impl Strategy<Value = CircuitDocument> {
    (2usize..5, any::<bool>(), any::<bool>()).prop_flat_map(|(n, fermion, swept)| {
        let var = swept.then_some("x");
        let element = prop_oneof![
            (0..n, 1..n, prop::option::of(expr(var))).prop_map(move |(a, off, theta)| {
                ElementStmt::Beamsplitter {
                    path_a: a,
                    path_b: (a + off) % n,
                    theta,
                }
            }),
            (0..n, expr(var)).prop_map(|(path, phi)| ElementStmt::Phase { path, phi }),
        ];
        let input = prop_oneof![
            prop::collection::vec(0u32..3, n).prop_map(InputStmt::Fock),
            (0..n, 0..n, (0.0..=1.0f64)).prop_map(|(p1, p2, r)| InputStmt::Pair {
                path_1: p1,
                path_2: p2,
                r: Expr::Number(r),
            }),
        ];
        let sweep = if swept {
            (expr(None), expr(None), 1u32..100)
                .prop_map(|(start, end, count)| {
                    Some(Sweep {
                        name: "x".into(),
                        start,
                        end,
                        count,
                    })
                })
                .boxed()
        } else {
            Just(None).boxed()
        };
        (prop::collection::vec(element, 0..6), input, sweep).prop_map(move |(elements, input, sweep)| {
            CircuitDocument {
                stats: if fermion { Statistics::Fermion } else { Statistics::Boson },
                n_paths: n,
                elements,
                input,
                sweep,
            }
        })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(doc in document()) {
        let text = doc.to_string();
        prop_assert_eq!(parse(&text).unwrap(), doc);
    }
}
