use serde_json::Value;
use std::process::{Command, Output};

fn herman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herman")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn cplx(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn records_have_the_common_shape() {
    let out = herman(&["solve-u", "--p", "2", "--a", "4", "--b", "11.03081483-5.91931036i"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["op"], "solve-u");
    for key in ["inputs", "result", "residuals", "error_bound"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(cplx(&v["inputs"]["b"]), (11.03081483, -5.91931036));
    assert!(v["residuals"]["f2_at_0"].as_f64().unwrap() < 1e-10);
}

#[test]
fn cf_of_golden() {
    let v = json(&herman(&["cf", "--x", "golden", "--n", "5", "--brjuno", "3"]));
    let quotients: Vec<u64> = v["result"]["partial_quotients"].as_array().unwrap().iter().map(|q| q.as_u64().unwrap()).collect();
    assert_eq!(quotients, vec![1; 5]);
    let expected = 2f64.ln() + 3f64.ln() / 2.0 + 5f64.ln() / 3.0;
    assert!((v["result"]["brjuno_partial"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn cf_of_an_exact_fraction_terminates() {
    let v = json(&herman(&["cf", "--x", "7/16", "--n", "10"]));
    assert_eq!(v["result"]["terminated"], true);
    let last = v["result"]["convergents"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last[0].as_u64(), last[1].as_u64()), (Some(7), Some(16)));
}

#[test]
fn siegel2_solution_satisfies_its_equation() {
    let out = herman(&["solve-siegel2", "--theta", "golden"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["residuals"]["equation"].as_f64().unwrap() < 1e-12);
}

#[test]
fn broken_cycle_exits_one() {
    let out = herman(&["verify-cycle", "--family", "cubic-rat", "--a", "4", "--b", "11-5i", "--u", "0.3+0.2i", "--z0", "0", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["status"], "FAIL");
}

#[test]
fn true_cycle_exits_zero() {
    let out = herman(&["verify-cycle", "--family", "mero-pole-exp", "--a", "0.01", "--b=-1.23796766-0.16535887i", "--z0", "0", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["solve-u", "--p", "5", "--a", "4", "--b", "1"],
        vec!["solve-u", "--p", "2", "--a", "4", "--b", "1 + 2i"],
        vec!["symmetry-check", "--r", "1.5", "--t", "0.3"],
        vec!["verify-cycle", "--family", "cubic-rat", "--a", "4", "--z0", "0", "--p", "2"],
        vec!["render-dyn", "--family", "quadratic", "--c", "0"],
    ] {
        let out = herman(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn default_quadlike_grid_passes() {
    let out = herman(&["verify-quadlike", "--grid", "default"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["status"], "PASS");
    let g1 = v["result"]["gamma1_modulus"].as_f64().unwrap();
    assert!((g1 - 2.0 / std::f64::consts::E.powi(2)).abs() < 1e-12);
}

#[test]
fn symmetry_holds_for_both_exponents() {
    let out = herman(&["symmetry-check", "--r", "1/40", "--t", "0.34172383"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn render_writes_a_ppm_and_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.ppm"), dir.path().join("b.ppm"));
    let args = |p: &std::path::Path| {
        vec![
            "render-dyn".to_string(),
            "--family".into(),
            "quadratic".into(),
            "--c=-1".into(),
            "--width".into(),
            "60".into(),
            "--height".into(),
            "40".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let run = |p: &std::path::Path| {
        let a = args(p);
        herman(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let (o1, o2) = (run(&p1), run(&p2));
    assert_eq!((o1.status.code(), o2.status.code()), (Some(0), Some(0)));
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(b1.starts_with(b"P6\n60 40\n255\n"));
    assert_eq!(b1.len(), 13 + 60 * 40 * 3);
    assert_eq!(b1, b2);
    let counts = &json(&o1)["result"]["counts"];
    let total: u64 = counts.as_object().unwrap().values().map(|n| n.as_u64().unwrap()).sum();
    assert_eq!(total, 2400);
    assert!(counts["attracted"].as_u64().unwrap() > 0 && counts["escape"].as_u64().unwrap() > 0);
}

#[test]
fn tongue_chase_and_bisection_agree_for_arnold() {
    let t = json(&herman(&["find-param", "tongues", "--slice", "arnold-t", "--a", "0.9", "--s0", "0.5", "--s1", "0.7", "--theta", "golden", "--depth", "6"]));
    let b = json(&herman(&["find-param", "circle", "--family", "arnold", "--a", "0.9", "--theta", "golden", "--t0", "0.5", "--t1", "0.7"]));
    let (tv, bv) = (t["result"]["value"].as_f64().unwrap(), b["result"]["t"].as_f64().unwrap());
    assert!((tv - bv).abs() < 2e-3, "{tv} vs {bv}");
}
