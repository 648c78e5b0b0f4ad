use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hbar-polar"))
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hbar-polar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = scratch_dir().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn pair_check_exit_codes() {
    let x = scratch("x.json", r#"{"type": "hpoly", "rows": [[0.5]]}"#);
    let tight = scratch("p_tight.json", r#"{"type": "hpoly", "rows": [[2.0]]}"#);
    let small = scratch("p_small.json", r#"{"type": "hpoly", "rows": [[4.0]]}"#);
    let (x, tight, small) = (x.to_str().unwrap(), tight.to_str().unwrap(), small.to_str().unwrap());

    let o = run(&["pair-check", x, tight, "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["is_pair"], true);
    assert!((v["capacity"].as_f64().unwrap() - 4.0).abs() < 1e-12);

    assert_eq!(run(&["pair-check", x, small]).status.code(), Some(2));
    // With a larger ħ the same bodies stop being a pair.
    assert_eq!(run(&["--hbar", "2", "pair-check", x, tight]).status.code(), Some(2));
}

#[test]
fn polar_round_trips_through_files() {
    let body = scratch("box.json", r#"{"type": "hpoly", "rows": [[1, 0], [0, 0.5]]}"#);
    let out = body.with_file_name("box_dual.json");
    let o = run(&["polar", body.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dual: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(dual["type"], "vpoly");
    let back = run(&["polar", out.to_str().unwrap(), "--format", "structured"]);
    let v = json(&back);
    assert_eq!(v["type"], "hpoly");
    assert_eq!(v["rows"], serde_json::json!([[1.0, 0.0], [0.0, 0.5]]));
}

#[test]
fn capacity_of_ellipsoid_and_product() {
    let vacuum = scratch("q.txt", "1 0\n0 1\n");
    let o = run(&["capacity", "--ellipsoid", vacuum.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(v["kind"], "ellipsoid");

    let x = scratch("cx.json", r#"{"type": "hpoly", "rows": [[0.5]]}"#);
    let p = scratch("cp.json", r#"{"type": "hpoly", "rows": [[0.3333333333333333]]}"#);
    let o = run(&["capacity", x.to_str().unwrap(), p.to_str().unwrap(), "--format", "structured"]);
    assert!((json(&o)["value"].as_f64().unwrap() - 24.0).abs() < 1e-12);
}

#[test]
fn covariance_verdicts() {
    let ok = scratch("ok.txt", "# vacuum\n0.5, 0\n0, 0.5\n");
    let o = run(&["covariance", ok.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["is_quantum"], true);
    assert_eq!(v["pair"]["is_pair"], true);

    let bad = scratch("bad.txt", "[[0.2, 0], [0, 0.5]]");
    assert_eq!(run(&["covariance", bad.to_str().unwrap()]).status.code(), Some(2));
    let asym = scratch("asym.txt", "1 0.5\n0.2 1\n");
    assert_eq!(run(&["covariance", asym.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn hardy_modes() {
    assert_eq!(run(&["hardy", "--envelope", "1,0.5"]).status.code(), Some(0));
    assert_eq!(run(&["hardy", "--envelope", "1,0.4"]).status.code(), Some(2));
    let half = scratch("half.txt", "0.5\n");
    let o = run(&["hardy", "--a", half.to_str().unwrap(), "--b", half.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["classification"], "gaussian_boundary");
    let small = scratch("small.txt", "0.3\n");
    let o = run(&["hardy", "--a", small.to_str().unwrap(), "--b", half.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cloud_generate_and_analyze() {
    let dir = scratch_dir();
    let doc = dir.join("disk.json");
    let o = run(&["--seed", "3", "cloud", "generate", "disk", "--rx", "2", "--rp", "1", "--samples", "3000", "--out", doc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["cloud", "analyze", "--cloud", doc.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let (lambda, cap) = (v["pair"]["lambda_max"].as_f64().unwrap(), v["capacity"]["value"].as_f64().unwrap());
    assert!((4.0 * lambda - cap).abs() < 1e-12);

    let (xs, ps) = (dir.join("gx.csv"), dir.join("gp.csv"));
    let o = run(&[
        "cloud", "generate", "gaussian", "--rx", "0.3", "--rp", "0.3", "--samples", "2000",
        "--x-out", xs.to_str().unwrap(), "--p-out", ps.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--fit", "interval-box", "--trim", "0.01", "cloud", "analyze", "--x", xs.to_str().unwrap(), "--p", ps.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn disk_demo_reports_flag() {
    let o = run(&["demo", "disk-example", "--samples", "20000", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["stated_matches_measured"], false);
    assert_eq!(v["measured_matches_analytic"], true);
}

#[test]
fn plot_section_output() {
    let ball = scratch("ball.json", r#"{"type": "ellipsoid", "matrix": [[1, 0], [0, 1]]}"#);
    let o = run(&["plot", "section", "--body", ball.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# section plane=0,1 source=ellipsoid points=256 closed=true"));
    assert_eq!(text.lines().count(), 3 + 256);
    let o = run(&["plot", "section", "--body", ball.to_str().unwrap(), "--plane", "0,2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["pair-check", "/nonexistent/x.json", "/nonexistent/p.json"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
