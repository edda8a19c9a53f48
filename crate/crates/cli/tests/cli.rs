use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn iso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iso")).args(args).output().expect("running iso")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(iso(&["--help"]).status.code(), Some(0));
    assert_eq!(iso(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(iso(&["shape", "eval", "/nonexistent/shape.json"]).status.code(), Some(1));
    assert_eq!(iso(&["opepl", "solve"]).status.code(), Some(1), "--seed is required");
    let err = iso(&["shape", "emit", "counterexample", "--param", "2.5"]);
    assert_eq!(err.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
}

#[test]
fn emit_then_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("stadium.json");
    let svg = dir.path().join("stadium.svg");
    let o = iso(&["shape", "emit", "stadium", "--param", "0.575", "--out", path(&file), "--svg", path(&svg)]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let o = iso(&["shape", "eval", path(&file)]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(header.len(), row.len());
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert!((col("area") - std::f64::consts::PI).abs() < 1e-12);
    assert!((col("ratio_lambda0") - 0.406).abs() < 1e-3);

    let o = iso(&["shape", "eval", "--json", path(&file)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["lambda0"].as_f64().unwrap() - col("lambda0")).abs() < 1e-14);
}

#[test]
fn scans_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o =
            iso(&["family", "scan", "counterexample", "--lo", "2", "--hi", "60", "--steps", "30", "--out", path(p)]);
        assert!(o.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("param,delta,lambda0,lambda,ratio\n"));
    assert_eq!(text.lines().count(), 31);
}

#[test]
fn stadium_roots_and_dumbbell() {
    let text = stdout(&iso(&["stadium", "roots"]));
    assert!(text.starts_with("equation,root,residual\n"));
    let root: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((root - 0.5750).abs() < 1e-3);
    let text = stdout(&iso(&["family", "dumbbell"]));
    let ratio: f64 = text.lines().nth(1).unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!((ratio - 0.2627083).abs() < 1e-6);
}

#[test]
fn opepl_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.csv");
    let o = iso(&[
        "opepl",
        "solve",
        "--seed",
        "3",
        "--harmonics",
        "32",
        "--grid",
        "2048",
        "--restarts",
        "2",
        "--out",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("fourier: m = ") && text.contains("fixedpoint: m = ") && text.contains("difference: "));
    let csv = fs::read_to_string(dir.path().join("u_fixedpoint.csv")).unwrap();
    assert!(csv.starts_with("theta,u0,sign\n"));
    assert_eq!(csv.lines().count(), 2049);
    assert!(dir.path().join("u_fourier.csv").exists());
}

#[test]
fn bound_and_optimality() {
    let text = stdout(&iso(&["bound", "m-lower"]));
    let q: f64 = text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!(q > 0.41);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    let csv = dir.path().join("r.csv");
    assert!(iso(&["shape", "emit", "stadium", "--param", "0.8", "--out", path(&file)]).status.success());
    let o = iso(&["optimality", "residual", path(&file), "--out", path(&csv)]);
    assert!(o.status.success());
    let text = stdout(&o);
    let worst: f64 = text.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(worst > 1e-2);
    assert!(fs::read_to_string(&csv).unwrap().starts_with("angle,x,y,curvature,predicted,residual\n"));
}

#[test]
fn verify_all_passes() {
    let o = iso(&["verify", "all", "--seed", "5", "--shapes", "30"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("11 checks, 0 failed"));
}
