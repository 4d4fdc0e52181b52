use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qcwidth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcwidth")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn optimize_writes_circuit_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.qc");
    let stats = dir.path().join("stats.json");
    let input = fixture("bench/t_h_t.qc");
    let o = qcwidth(&["optimize", s(&input), "--out", s(&out), "--stats", s(&stats)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(r["schema"], 1);
    assert_eq!(r["n"], 1);
    assert_eq!(r["h"], 1);
    assert_eq!(r["initial_qubits"], 2);
    assert_eq!(r["degadget_qubits"], 1);
    let v = qcwidth(&["verify", s(&input), s(&out)]);
    assert_eq!(code(&v), 0);
}

#[test]
fn every_method_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("bench/tof3.qc");
    for (method, ext) in [("degadget", "qc"), ("pathwidth", "json"), ("both", "qc"), ("cutwidth", "json")] {
        let out = dir.path().join(format!("{method}.{ext}"));
        let o = qcwidth(&["optimize", s(&input), "--method", method, "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{method}: {}", String::from_utf8_lossy(&o.stderr));
        let r: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(r["initial_qubits"], 7);
        let v = qcwidth(&["verify", s(&input), s(&out)]);
        assert_eq!(code(&v), 0, "{method}: {}", String::from_utf8_lossy(&v.stderr));
        if method == "both" {
            let d = r["degadget_qubits"].as_u64().unwrap();
            let p = r["pathwidth_qubits"].as_u64().unwrap();
            let text = fs::read_to_string(&out).unwrap();
            let width = text.lines().next().unwrap().split_whitespace().count() as u64 - 1;
            assert_eq!(width, d.min(p));
        }
        if method == "pathwidth" {
            let pw = r["pathwidth"].as_u64().unwrap();
            let q = r["pathwidth_qubits"].as_u64().unwrap();
            assert!(pw <= q && q <= pw + 1, "pw {pw}, qubits {q}");
        }
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture("bench/t_h_t.qc");
    let b = dir.path().join("b.qc");
    fs::write(&b, ".v a\nBEGIN\nT a\nH a\nT a\nT a\nEND\n").unwrap();
    assert_eq!(code(&qcwidth(&["verify", s(&a), s(&a)])), 0);
    assert_eq!(code(&qcwidth(&["verify", s(&a), s(&b)])), 3);
    assert_eq!(code(&qcwidth(&["verify", s(&a), s(&a), "--tensor-cap", "0"])), 4);
    let bad = dir.path().join("bad.qc");
    fs::write(&bad, ".v a\nBEGIN\nfoo a\nEND\n").unwrap();
    let o = qcwidth(&["verify", s(&a), s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn gadgetized_form_verifies_against_its_source() {
    let four = fixture("four_pairs.qc");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = qcwidth(&["optimize", s(&four), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r["n"].as_u64(), r["h"].as_u64()), (Some(3), Some(4)));
    assert_eq!(r["degadget_qubits"], 5);
    assert_eq!(code(&qcwidth(&["verify", s(&four), s(&out)])), 0);
}

#[test]
fn bench_tables() {
    let empty = tempfile::tempdir().unwrap();
    let o = qcwidth(&["bench", s(empty.path())]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "Circuit\tn\th\tinitial\tDegadgetization\tPathwidth\n");

    let dir = fixture("bench");
    let first = qcwidth(&["bench", s(&dir)]);
    let second = qcwidth(&["bench", s(&dir)]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("tof3\t5\t2\t7\t")), "{text}");
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);

    let md = qcwidth(&["bench", s(&dir), "--format", "markdown"]);
    let md = String::from_utf8(md.stdout).unwrap();
    assert!(md.starts_with("| Circuit | n | h | initial | Degadgetization | Pathwidth |\n|---|"));
}

#[test]
fn layout_of_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.txt");
    fs::write(&g, "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    let o = qcwidth(&["layout", s(&g)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["width"], 2);
    assert_eq!(v["order"].as_array().unwrap().len(), 5);
    let o = qcwidth(&["layout", s(&g), "--kind", "cutwidth"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["width"], 2);
}

#[test]
fn oracle_uses_the_seed() {
    let o = Command::new(env!("CARGO_BIN_EXE_qcwidth"))
        .args(["oracle", "--min", "4", "--max", "5", "--count", "10"])
        .env("QCWIDTH_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("seed 7 |V|=4: 10 graphs, 0 mismatches\n"), "{text}");
}

#[test]
fn ancilla_measurement_is_not_a_gadget() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("anc.qc");
    fs::write(&input, ".v a b c\n.i a b\n.o a b\nBEGIN\nH c\ntof a b c\nT c\nH c\nT* a\nEND\n").unwrap();
    let out = dir.path().join("out.qc");
    let o = qcwidth(&["optimize", s(&input), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r["n"].as_u64(), r["h"].as_u64()), (Some(3), Some(2)));
    assert_eq!(code(&qcwidth(&["verify", s(&input), s(&out)])), 0);
}
