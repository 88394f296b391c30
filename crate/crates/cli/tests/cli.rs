use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfact::hopf::{load_dump, write_dump};
use serde_json::Value;
use tempfile::TempDir;

const S3: &str = "# symmetric group on three points\ngroup S3\ndegree 3\ngen (1 2 3)\ngen (1 2)\n";
const S5: &str = "group S5\ndegree 5\ngen (1 2 3 4 5)\ngen (1 2)\n";
const C2: &str = "group C2\ndegree 2\ngen (1 2)\n";

struct Scratch {
    dir: TempDir,
}

impl Scratch {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn hopfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfact"))
        .args(args)
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> Value {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let o = hopfact(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn factorize_counts() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let doc = machine(&["factorize", path(&s3), "--proper"]);
    assert_eq!(doc["result"]["factorizations"].as_array().unwrap().len(), 6);
    let c2 = s.file("c2.txt", C2);
    let doc = machine(&["factorize", path(&c2), "--proper"]);
    assert_eq!(doc["result"]["factorizations"].as_array().unwrap().len(), 0);
    let s5 = s.file("s5.txt", S5);
    let doc = machine(&["factorize", path(&s5), "--proper"]);
    let rows = doc["result"]["factorizations"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["f_order"] == 24 && r["gamma_order"] == 5));
}

#[test]
fn header_records_version_seed_and_digest() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let out = stdout(&hopfact(&["--seed", "11", "factorize", path(&s3)]));
    assert!(out.starts_with(&format!(
        "# hopfact {}\n# seed 11\n",
        env!("CARGO_PKG_VERSION")
    )));
    // sha256 of the S3 file body
    let digest = machine(&["factorize", path(&s3)])["inputs"][0]["sha256"]
        .as_str()
        .unwrap()
        .to_string();
    assert_eq!(digest.len(), 64);
    assert!(out.contains(&digest));
}

#[test]
fn build_writes_a_round_tripping_dump() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let dump = s.dir.path().join("h.dump");
    let o = hopfact(&[
        "build",
        path(&s3),
        "--f",
        "(1 2)",
        "--gamma",
        "(1 2 3)",
        "--out",
        path(&dump),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("axioms: pass"));
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("hopf "));
    assert!(text.contains(" dim 6 "));
    assert_eq!(write_dump(&load_dump(&text).unwrap()), text);
}

#[test]
fn trivial_gamma_builds_the_group_algebra() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let doc = machine(&[
        "build",
        path(&s3),
        "--f",
        "(1 2 3)",
        "--f",
        "(1 2)",
        "--gamma",
        "()",
        "--out",
        path(&s.dir.path().join("k.dump")),
    ]);
    assert_eq!(doc["result"]["dim"], 6);
    assert_eq!(doc["result"]["axioms_passed"], true);
}

#[test]
fn tampered_cocycle_fails_with_a_named_identity() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let sigma = s.file("sigma.txt", "cocycle sigma\norder 2\n1 1 1 1\n");
    let o = hopfact(&[
        "build",
        path(&s3),
        "--f",
        "(1 2)",
        "--gamma",
        "(1 2 3)",
        "--sigma",
        path(&sigma),
    ]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("cocycle validation failed"), "{err}");
    assert!(
        err.contains("sigma cocycle") || err.contains("joint compatibility"),
        "{err}"
    );
}

#[test]
fn parse_errors_carry_line_numbers() {
    let s = Scratch::new();
    let bad = s.file("bad.txt", "group X\ndegree 3\ngen (1 4)\n");
    let o = hopfact(&["factorize", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));
}

#[test]
fn irreps_of_the_s5_bismash_divide_24() {
    let s = Scratch::new();
    let s5 = s.file("s5.txt", S5);
    let doc = machine(&[
        "irreps",
        path(&s5),
        "--f",
        "(1 2)",
        "--f",
        "(1 2 3 4)",
        "--gamma",
        "(1 2 3 4 5)",
    ]);
    assert_eq!(doc["result"]["degrees_divide_f"], true);
    let degrees: Vec<u64> = doc["result"]["catalog"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees.iter().map(|d| d * d).sum::<u64>(), 120);
}

#[test]
fn double_and_fusion_on_s3() {
    let s = Scratch::new();
    let s3 = s.file("s3.txt", S3);
    let doc = machine(&["double", path(&s3)]);
    assert_eq!(doc["result"]["objects"].as_array().unwrap().len(), 8);
    let doc = machine(&["fusion", path(&s3)]);
    assert_eq!(doc["result"]["triples"].as_array().unwrap().len(), 8);
    assert!(doc["result"]["oracle"]
        .as_str()
        .unwrap()
        .contains("identical"));
    assert!(stdout(&hopfact(&["fusion", path(&s3)])).contains("triple 7: dimension"));
}

#[test]
fn obstruct_s5_gives_no_qt_with_four_steps() {
    let s = Scratch::new();
    let s5 = s.file("s5.txt", S5);
    let args = [
        "obstruct",
        path(&s5),
        "--f",
        "(1 2)",
        "--f",
        "(1 2 3 4)",
        "--gamma",
        "(1 2 3 4 5)",
    ];
    let doc = machine(&args);
    assert_eq!(doc["result"]["verdict"], "NoQT");
    assert_eq!(doc["result"]["trace"].as_array().unwrap().len(), 4);
    let text = stdout(&hopfact(&args));
    assert!(text.contains("verdict: NoQT"));
    assert_eq!(text, stdout(&hopfact(&args)), "same seed, same output");
}

#[test]
fn omega_files_are_validated() {
    let s = Scratch::new();
    let c2 = s.file("c2.txt", C2);
    let nontrivial = s.file("w.txt", "omega\norder 2\n1 1 1 1\n");
    let doc = machine(&["double", path(&c2), "--omega", path(&nontrivial)]);
    assert_eq!(doc["result"]["omega_trivial"], false);
    let broken = s.file("bad.txt", "omega\norder 2\n1 1 0 1\n");
    let o = hopfact(&["double", path(&c2), "--omega", path(&broken)]);
    assert_eq!(o.status.code(), Some(1));
}
