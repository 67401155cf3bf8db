use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use dwigner::io::{MatrixFile, RecordFile};
use dwigner::mub::projector;
use dwigner::{simulate_probs, BasisLabel, ComplexMatrix, DensityMatrix, Dimension};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dwigner"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn dwigner")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_matrix(dir: &TempDir, name: &str, m: &ComplexMatrix) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(&MatrixFile::from_matrix(m)).unwrap()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn unit_projector(n: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m[(k, k)] = 1.0.into();
    m
}

/// A fixed full-rank state with off-diagonal coherences.
fn sample_state(n: u64) -> ComplexMatrix {
    let d = Dimension::new(n).unwrap();
    let a = projector(d.elem(1), BasisLabel::Xz(d.elem(1)), d).scale_real(0.5);
    let b = projector(d.elem(2), BasisLabel::Xz(d.elem(0)), d).scale_real(0.3);
    let c = ComplexMatrix::identity(n as usize).scale_real(0.2 / n as f64);
    &(&a + &b) + &c
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn wigner_of_identity_and_projector() {
    let dir = TempDir::new().unwrap();
    let id = write_matrix(&dir, "id.json", &ComplexMatrix::identity(5));
    let o = run(&["wigner", "--dim", "5", "--c", "0", "--state", p(&id)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("q,p,W\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 25);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], (i / 5).to_string());
        assert_eq!(r[1], (i % 5).to_string());
        assert!((r[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    }

    let proj = write_matrix(&dir, "q3.json", &unit_projector(5, 3));
    for route in ["trace", "mub", "schwinger"] {
        let o = run(&["wigner", "--dim", "5", "--c", "-1/2", "--state", p(&proj), "--route", route]);
        assert!(o.status.success());
        for r in csv_rows(&stdout(&o)) {
            let want = if r[0] == "3" { 1.0 } else { 0.0 };
            assert!((r[2].parse::<f64>().unwrap() - want).abs() < 1e-10, "{route} {r:?}");
        }
    }

    let out = dir.path().join("w.csv");
    let o = run(&["wigner", "--dim", "5", "--c", "1/3", "--state", p(&proj), "--out", p(&out)]);
    assert!(o.status.success());
    assert_eq!(csv_rows(&std::fs::read_to_string(&out).unwrap()).len(), 25);
}

#[test]
fn wigner_reads_stdin() {
    let text = serde_json::to_string(&MatrixFile::from_matrix(&ComplexMatrix::identity(3))).unwrap();
    let mut child = bin()
        .args(["wigner", "--dim", "3", "--c", "0", "--state", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(csv_rows(&stdout(&o)).len(), 9);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let mut nh = ComplexMatrix::zeros(3);
    nh[(0, 1)] = 1.0.into();
    let nh = write_matrix(&dir, "nh.json", &nh);
    let id5 = write_matrix(&dir, "id5.json", &ComplexMatrix::identity(5));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();

    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["wigner", "--dim", "3", "--c", "0", "--state", p(&nh)]), 4);
    assert_eq!(code(&["wigner", "--dim", "3", "--c", "0", "--state", p(&id5)]), 3);
    assert_eq!(code(&["wigner", "--dim", "3", "--c", "0", "--state", p(&garbage)]), 2);
    assert_eq!(code(&["wigner", "--dim", "3", "--c", "0", "--state", "/nonexistent"]), 2);
    assert_eq!(code(&["wigner", "--dim", "3", "--c", "x/y", "--state", p(&id5)]), 2);
    assert_eq!(code(&["lineop", "--dim", "4", "--c", "0", "--q", "0", "--p", "0"]), 3);
    assert_eq!(code(&["line", "--dim", "2", "--c", "0", "--q", "0", "--p", "0"]), 3);
    assert_eq!(code(&["line", "--dim", "5"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn lineop_outputs() {
    let o = run(&["lineop", "--dim", "5", "--c", "-1/2", "--q", "0", "--p", "0"]);
    assert!(o.status.success());
    let m = MatrixFile::parse(&stdout(&o)).unwrap().to_matrix().unwrap();
    for r in 0..5 {
        for c in 0..5 {
            let want = if (r + c) % 5 == 0 { 1.0 } else { 0.0 };
            assert!((m[(r, c)].re - want).abs() < 1e-15 && m[(r, c)].im.abs() < 1e-15);
        }
    }
    for (q, pp) in [("1", "2"), ("4", "3"), ("0", "1")] {
        for c in ["0", "-1/2", "3/2"] {
            let args = |k: &'static str| {
                run(&["lineop", "--dim", "7", "--c", c, "--q", q, "--p", pp, "--construction", k, "--precision", "10"])
            };
            let a = args("mub");
            let b = args("closed");
            assert!(a.status.success() && b.status.success());
            assert_eq!(a.stdout, b.stdout, "q={q} p={pp} c={c}");
        }
    }
}

#[test]
fn line_outputs() {
    let o = run(&["line", "--dim", "5", "--c", "0", "--q", "2", "--p", "1"]);
    assert_eq!(stdout(&o), "b,m\nddot0,2\n0,4\n1,1\n2,3\n3,0\n4,2\n");
    let o = run(&["line", "--dim", "5", "--c", "-1/2", "--q", "2", "--p", "1"]);
    assert_eq!(stdout(&o), "b,m\nddot0,2\n0,4\n1,3\n2,2\n3,1\n4,0\n");
    let o = run(&["line", "--dim", "3", "--c", "0", "--q", "0", "--p", "0"]);
    assert_eq!(stdout(&o), "b,m\nddot0,0\n0,0\n1,0\n2,0\n");
}

#[test]
fn radon_outputs() {
    let dir = TempDir::new().unwrap();
    let mixed = write_matrix(&dir, "mixed.json", &ComplexMatrix::identity(5).scale_real(0.2));
    for basis in ["ddot0", "0", "3"] {
        let o = run(&["radon", "--dim", "5", "--c", "0", "--state", p(&mixed), "--basis", basis]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.starts_with("m,probability\n"));
        for r in csv_rows(&text) {
            assert!((r[1].parse::<f64>().unwrap() - 0.2).abs() < 1e-12);
        }
    }
    let q2 = write_matrix(&dir, "q2.json", &unit_projector(5, 2));
    let o = run(&["radon", "--dim", "5", "--c", "-1/2", "--state", p(&q2), "--basis", "ddot0"]);
    for r in csv_rows(&stdout(&o)) {
        let want = if r[0] == "2" { 1.0 } else { 0.0 };
        assert!((r[1].parse::<f64>().unwrap() - want).abs() < 1e-10);
    }
    let d = Dimension::new(5).unwrap();
    let mb = write_matrix(&dir, "mb.json", &projector(d.elem(4), BasisLabel::Xz(d.elem(3)), d));
    let o = run(&["radon", "--dim", "5", "--c", "0", "--state", p(&mb), "--basis", "3"]);
    for r in csv_rows(&stdout(&o)) {
        let want = if r[0] == "4" { 1.0 } else { 0.0 };
        assert!((r[1].parse::<f64>().unwrap() - want).abs() < 1e-9);
    }
    let code = |b: &str| run(&["radon", "--dim", "5", "--c", "0", "--state", p(&mixed), "--basis", b]).status.code();
    assert_eq!(code("ddot1"), Some(5));
    assert_eq!(code("5"), Some(5));
}

#[test]
fn tomography_from_exact_record() {
    let dir = TempDir::new().unwrap();
    for n in [3u64, 5, 7] {
        let rho = sample_state(n);
        let rec = simulate_probs(&DensityMatrix::new(rho.clone()).unwrap()).unwrap();
        let path = dir.path().join(format!("rec{n}.json"));
        std::fs::write(&path, serde_json::to_string(&RecordFile::from_record(&rec)).unwrap()).unwrap();
        for c in ["0", "-1/2"] {
            let o = run(&["tomo", "--dim", &n.to_string(), "--c", c, "--probs", p(&path)]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
            let m = MatrixFile::parse(&stdout(&o)).unwrap().to_matrix().unwrap();
            assert!(m.approx_eq(&rho, 1e-9));
            let diag = &doc["diagnostics"];
            assert!((diag["trace"].as_f64().unwrap() - 1.0).abs() < 1e-12);
            assert!(diag["hermiticity_residue"].as_f64().unwrap() < 1e-12);
            assert!(diag["min_eigenvalue"].as_f64().unwrap() > 0.0);
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 3, "entries": []}"#).unwrap();
    assert_eq!(run(&["tomo", "--dim", "3", "--c", "0", "--probs", p(&bad)]).status.code(), Some(2));
}

#[test]
fn tomography_from_samples() {
    let dir = TempDir::new().unwrap();
    let state = write_matrix(&dir, "rho.json", &sample_state(5));
    let args = ["tomo", "--dim", "5", "--c", "-1/2", "--state", p(&state), "--shots", "2000", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["diagnostics"]["sample_count"], 2000);
    let zero = run(&["tomo", "--dim", "5", "--c", "0", "--state", p(&state), "--shots", "0"]);
    assert_eq!(zero.status.code(), Some(1));

    let o = run(&["probs", "--dim", "5", "--state", p(&state), "--shots", "100", "--seed", "1"]);
    let rec = RecordFile::parse(&stdout(&o)).unwrap().to_record().unwrap();
    assert_eq!(rec.sample_count, Some(100));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--dim", "5", "--c", "-1/2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS")), "{text}");
    assert!(text.contains("parity identification"));

    let o = run(&["verify", "--dim", "5", "--c", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let parity = text.lines().find(|l| l.contains("parity identification")).unwrap();
    assert!(parity.starts_with("SKIPPED"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_deep_at_thirteen_is_fast() {
    let start = Instant::now();
    let o = run(&["verify", "--dim", "13", "--c", "-1/2", "--deep"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(start.elapsed() < Duration::from_secs(60));
    assert!(stdout(&o).contains("clock-shift route"));
}
