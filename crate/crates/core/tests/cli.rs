use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use otlab::json::{measure_from_json, PlanFile};
use otlab::sampling::{random_measure, trial_rng};
use otlab::{oracle_transport, solve_transport, SpaceDescriptor};
use serde_json::Value;
use tempfile::TempDir;

fn otlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otlab")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dist(metric: &str, p: &str, a: &Path, b: &Path) -> Output {
    otlab(&["dist", "--metric", metric, "--p", p, s(a), s(b)])
}

#[test]
fn discrete_w1_equals_tv() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"space": {"kind": "discrete", "dim": 4}, "atoms": [0, 1, 3], "weights": [0.5, 0.25, 0.25]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"space": {"kind": "discrete", "dim": 4}, "atoms": [1, 2], "weights": [0.6, 0.4]}"#,
    );
    let w = dist("wp", "1", &a, &b);
    let tv = dist("tv", "1", &a, &b);
    assert!(w.status.success() && tv.status.success());
    let (w, tv) = (stdout_json(&w), stdout_json(&tv));
    assert_eq!(w["metric"], "wp");
    assert_eq!(w["p"], 1.0);
    assert!(tv.get("p").is_none());
    assert!((w["value"].as_f64().unwrap() - tv["value"].as_f64().unwrap()).abs() <= 1e-12);
    assert!((tv["value"].as_f64().unwrap() - 0.75).abs() <= 1e-12);
}

#[test]
fn distance_to_self_is_zero_and_ks_between_diracs_is_one() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"space": {"kind": "line", "dim": 1}, "atoms": [[0.0]], "weights": [1]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"space": {"kind": "line", "dim": 1}, "atoms": [[1.0]], "weights": [1]}"#,
    );
    let m = write(
        &dir,
        "m.json",
        r#"{"space": {"kind": "line"}, "atoms": [0.3, -2, 4], "weights": [0.2, 0.3, 0.5]}"#,
    );
    for metric in ["wp", "tv", "ks", "kuiper", "levy", "lp"] {
        let out = dist(metric, "2", &m, &m);
        assert!(out.status.success(), "{metric}");
        assert_eq!(stdout_json(&out)["value"], 0.0, "{metric}");
    }
    assert_eq!(stdout_json(&dist("ks", "1", &a, &b))["value"], 1.0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let line = write(
        &dir,
        "line.json",
        r#"{"space": {"kind": "line"}, "atoms": [0], "weights": [1]}"#,
    );
    let plane = write(
        &dir,
        "plane.json",
        r#"{"space": {"kind": "euclidean", "dim": 2}, "atoms": [[0, 0]], "weights": [1]}"#,
    );
    let bad_sum = write(
        &dir,
        "bad.json",
        r#"{"space": {"kind": "line"}, "atoms": [0, 1], "weights": [0.5, 0.4]}"#,
    );
    let garbage = write(&dir, "garbage.json", "not json");
    let big: Vec<String> = (0..16).map(|i| format!("[{i}, 0]")).collect();
    let wide = write(
        &dir,
        "wide.json",
        &format!(
            r#"{{"space": {{"kind": "euclidean", "dim": 2}}, "atoms": [{}], "weights": [{}]}}"#,
            big.join(","),
            vec!["0.0625"; 16].join(",")
        ),
    );

    assert_eq!(dist("wp", "1", &line, &plane).status.code(), Some(3));
    assert_eq!(dist("lp", "1", &wide, &plane).status.code(), Some(3));
    assert_eq!(dist("ks", "1", &plane, &plane).status.code(), Some(3));
    assert_eq!(dist("wp", "1", &bad_sum, &line).status.code(), Some(2));
    assert_eq!(dist("wp", "1", &garbage, &line).status.code(), Some(2));
    assert_eq!(dist("wp", "0.5", &line, &line).status.code(), Some(2));
    assert_eq!(dist("nope", "1", &line, &line).status.code(), Some(2));
    assert_eq!(otlab(&["dist", "--metric", "wp", s(&line)]).status.code(), Some(2));
    assert_eq!(otlab(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        otlab(&["gen", "--space", "torus", "--dim", "2", "--atoms", "3"])
            .status
            .code(),
        Some(2)
    );

    let err = dist("wp", "1", &bad_sum, &line);
    let message: Value = serde_json::from_slice(&err.stderr).unwrap();
    assert_eq!(message["error"], "sum_out_of_tolerance");
}

#[test]
fn transport_plans() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        r#"{"space": {"kind": "euclidean", "dim": 2}, "atoms": [[0, 0]], "weights": [1]}"#,
    );
    let y = write(
        &dir,
        "y.json",
        r#"{"space": {"kind": "euclidean", "dim": 2}, "atoms": [[3, 4]], "weights": [1]}"#,
    );
    let plan_path = dir.path().join("plan.json");
    let out = otlab(&["transport", "--p", "2", "--emit-plan", s(&plan_path), s(&x), s(&y)]);
    assert!(out.status.success());
    let plan: PlanFile = serde_json::from_str(&fs::read_to_string(&plan_path).unwrap()).unwrap();
    assert_eq!(plan.plan, vec![vec![1.0]]);
    assert!((plan.cost - 25.0).abs() <= 1e-12);
    assert_eq!(plan.wp, 5.0);

    // The only coupling of (½, ½) with a Dirac mass.
    let a = write(
        &dir,
        "a.json",
        r#"{"space": {"kind": "discrete", "dim": 2}, "atoms": [0, 1], "weights": [0.5, 0.5]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"space": {"kind": "discrete", "dim": 2}, "atoms": [0, 1], "weights": [1, 0]}"#,
    );
    let out = otlab(&["transport", "--p", "3", s(&a), s(&b)]);
    let plan: PlanFile = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(plan.plan, vec![vec![0.5], vec![0.5]]);
    assert_eq!(plan.cost, 0.5);
    plan.to_coupling(&[0.5, 0.5], &[1.0]).unwrap();
}

#[test]
fn transport_matches_oracle_on_generated_inputs() {
    let dir = TempDir::new().unwrap();
    let space = SpaceDescriptor::euclidean(3).unwrap();
    for k in 0..5 {
        let mut rng = trial_rng(77, k);
        let mu = random_measure(&space, 3, &mut rng).unwrap();
        let nu = random_measure(&space, 3, &mut rng).unwrap();
        let a = write(&dir, "a.json", &otlab::json::measure_to_json(&mu));
        let b = write(&dir, "b.json", &otlab::json::measure_to_json(&nu));
        let out = otlab(&["transport", "--p", "1.5", s(&a), s(&b)]);
        let plan: PlanFile = serde_json::from_slice(&out.stdout).unwrap();
        let cost = otlab::cost_matrix(&space, &mu, &nu, 1.5).unwrap();
        let oracle = oracle_transport(&cost, mu.weights(), nu.weights()).unwrap();
        assert!((plan.cost - oracle).abs() <= 1e-10);
        let coupling = plan.to_coupling(mu.weights(), nu.weights()).unwrap();
        assert!((coupling.cost(&cost).unwrap() - oracle).abs() <= 1e-10);
        assert_eq!(
            plan.dual_u,
            solve_transport(&cost, mu.weights(), nu.weights()).unwrap().dual_u
        );
    }
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let dir = TempDir::new().unwrap();
    for (space, dim) in [
        ("line", None),
        ("euclidean", Some("3")),
        ("sphere", Some("3")),
        ("discrete", Some("9")),
    ] {
        let mut runs = Vec::new();
        for name in ["one.json", "two.json"] {
            let path = dir.path().join(name);
            let mut args = vec![
                "gen",
                "--space",
                space,
                "--atoms",
                "5",
                "--seed",
                "12",
                "--out",
                s(&path),
            ];
            if let Some(d) = dim {
                args.extend(["--dim", d]);
            }
            assert!(otlab(&args).status.success(), "{space}");
            runs.push(fs::read(&path).unwrap());
        }
        assert_eq!(runs[0], runs[1]);
        let text = String::from_utf8(runs[0].clone()).unwrap();
        let m = measure_from_json(&text).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(otlab::json::measure_to_json(&m), text);
    }
    assert_eq!(
        otlab(&["gen", "--space", "discrete", "--dim", "3", "--atoms", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_reports() {
    let out = otlab(&["verify", "--suite", "oracle", "--seed", "3", "--trials", "50"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["suite"], "oracle");
    assert_eq!(report["trials"], 50);
    assert_eq!(report["pass"], true);
    assert!(report["max_error"].as_f64().unwrap() <= 1e-10);

    let out = otlab(&["verify", "--suite", "dirac-claim", "--seed", "3", "--trials", "25"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["pass"], true);

    let again = otlab(&["verify", "--suite", "dirac-claim", "--seed", "3", "--trials", "25"]);
    assert_eq!(out.stdout, again.stdout);
}
