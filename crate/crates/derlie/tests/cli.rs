use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use derlie::report::{Batch, BoundRecord, ReportDoc};
use derlie_core::corpus::ga1;
use derlie_core::analyze;

fn derlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).display().to_string()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const PLANE: &str = "\
vars x1, x2;
D1 = dx1;
X = x2*dx1;
Y = 1/2*x2^2*dx1;
D2 = dx2;
L2 = algebra(D1, X, Y, D2);
G = x1*dx1;
GA1 = algebra(D1, G);
Q = x1^2*dx1;
SL2 = algebra(D1, G, Q);
OPEN = algebra(D1, Q);
";

#[test]
fn analyze_l_family() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "plane.derlie", PLANE);
    let o = derlie(&["analyze", &f, "L2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["dim_Q = 4", "rank_R = 2", "nilpotent = true", "derived_length = 2", "bound s<=k: 2 <= 2 PASS"] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn ga1_text_lines() {
    let out = stdout(&derlie(&["corpus", "ga1"]));
    for line in ["rank_R = 1", "derived_length = 2", "bound s<=2k: 2 <= 2 PASS"] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn user_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "plane.derlie", PLANE);
    let bad = write_temp(&dir, "bad.derlie", "vars x;\nD = dy;\n");
    for args in [
        vec!["chain", f.as_str(), "GA1"],
        vec!["analyze", f.as_str(), "NOPE"],
        vec!["analyze", f.as_str(), "OPEN"],
        vec!["canonical", f.as_str(), "SL2"],
        vec!["classify1", f.as_str(), "L2"],
        vec!["analyze", bad.as_str(), "A"],
        vec!["corpus", "nope"],
        vec!["corpus", "l_family", "n=x"],
        vec!["analyze", "/nonexistent/file", "A"],
    ] {
        let o = derlie(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    let o = derlie(&["analyze", &f, "OPEN"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not closed"));
}

#[test]
fn chain_and_canonical_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "plane.derlie", PLANE);
    let o = derlie(&["chain", &f, "L2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness chain:"));
    assert!(!stdout(&o).contains("FAIL"));

    let o = derlie(&["canonical", &f, "L2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.contains("witness nilpotent-rank2-chain:"), "{out}");
    assert!(out.contains("  a = x2"), "{out}");
    assert!(out.contains("  k = 2"), "{out}");

    let o = derlie(&["classify1", &f, "GA1"]);
    assert!(stdout(&o).contains("witness solvable-rank1-affine:"));
}

#[test]
fn solv2_data_files() {
    for k in 1..=5 {
        let f = data(&format!("solv2/type{k}.toml"));
        let o = derlie(&["solv2", &k.to_string(), &f]);
        assert_eq!(o.status.code(), Some(0), "type {k}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(&format!("witness solv2-type-{k}:")));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.toml",
        "vars = [\"x1\", \"x2\"]\nD1 = \"dx1\"\nD2 = \"x1*dx1 + dx2\"\nb = \"2*x1\"\na1 = \"0\"\n",
    );
    let o = derlie(&["solv2", "2", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D1(b) = 1"));
}

#[test]
fn structured_output_parses_back() {
    let o = derlie(&["corpus", "b2", "--format", "structured"]);
    let text = stdout(&o);
    let doc: ReportDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.schema, "derlie.report/1.0");
    assert_eq!(doc.derived_series_dims, vec![4, 3, 1, 0]);
    assert_eq!(doc.to_json(), text);
}

#[test]
fn failed_bound_renders_fail_and_witness() {
    let l = ga1();
    let mut report = analyze(&l);
    report.bound_checks[0].lhs = 9;
    report.bound_checks[0].pass = false;
    let names = vec!["x1".to_string()];
    let doc = ReportDoc::new("tampered", &names, &l, &report);
    let text = doc.to_text();
    assert!(text.contains("9 <= 2 FAIL"), "{text}");
    assert!(text.contains("witness counterexample:"), "{text}");
    assert!(!doc.all_pass());
    assert_eq!(
        doc.bound_checks[0],
        BoundRecord {
            bound: "s<=2k".into(),
            lhs: 9,
            rhs: 2,
            pass: false
        }
    );
}

#[test]
fn verify_all_is_deterministic() {
    let session = data("corpus.derlie");
    let out = |dir: &tempfile::TempDir, name: &str| {
        let path = dir.path().join(name).display().to_string();
        let o = derlie(&["verify-all", &session, "--format", "structured", "--out", &path]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (out(&dir, "a.json"), out(&dir, "b.json"));
    assert_eq!(a, b);
    let batch: Batch = serde_json::from_slice(&a).unwrap();
    assert!(batch.all_pass);
}

#[test]
fn print_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "s.derlie", "vars x ;  # c\nD = (x+1)*dx - dx ;\n");
    assert_eq!(stdout(&derlie(&["print", &f])), "vars x;\nD = x*dx;\n");
}
