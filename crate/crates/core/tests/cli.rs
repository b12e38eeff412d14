use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn acps(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acps")).args(args).arg("--out-dir").arg(dir).output().expect("binary runs")
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path).unwrap().lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(rows: &[Vec<String>], idx: usize) -> Vec<f64> {
    rows[1..].iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn solve_alpha_one_degree_nine() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(
        dir.path(),
        &["solve", "--model", "sir", "--alpha", "1", "--degree", "9", "--t-end", "1", "--samples", "10"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let coeffs = read_csv(&dir.path().join("coefficients.csv"));
    assert_eq!(coeffs[0], ["variable", "index", "coefficient"]);
    assert_eq!(coeffs.len(), 1 + 30);
    let s: Vec<f64> = coeffs[1..11].iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(coeffs[1..11].iter().all(|r| r[0] == "S"));
    assert_eq!(s[0], 620.0);
    assert!((s[2] + 1.6678).abs() < 1e-12);
    assert!(((s[9] - 5.357_913_991_618_984e-7) / s[9]).abs() < 1e-9);

    let samples = read_csv(&dir.path().join("samples.csv"));
    assert_eq!(samples[0], ["t", "S", "I", "R"]);
    assert_eq!(samples.len(), 12);
    assert_eq!(samples[1], ["0.0", "620.0", "10.0", "70.0"]);
}

#[test]
fn solve_degree_zero_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(dir.path(), &["solve", "--alpha", "1", "--degree", "0", "--samples", "5"]);
    assert!(out.status.success());
    let samples = read_csv(&dir.path().join("samples.csv"));
    for row in &samples[1..] {
        assert_eq!(&row[1..], ["620.0", "10.0", "70.0"]);
    }
}

#[test]
fn solve_half_order_degree_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(dir.path(), &["solve", "--alpha", "0.5", "--degree", "2", "--scaled"]);
    assert!(out.status.success());
    let coeffs = read_csv(&dir.path().join("coefficients.csv"));
    assert_eq!(coeffs[0], ["variable", "index", "coefficient", "scaled"]);
    let s2: f64 = coeffs[3][2].parse().unwrap();
    assert!((s2 + 3.3356).abs() < 1e-12);
    let s1_scaled: f64 = coeffs[2][3].parse().unwrap();
    assert!((s1_scaled + 6.2).abs() < 1e-12);
}

#[test]
fn solve_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/../../models/sir.json");
    let a = acps(&dir.path().join("file"), &["solve", "--model", config, "--degree", "9"]);
    let b = acps(&dir.path().join("builtin"), &["solve", "--model", "sir", "--degree", "9"]);
    assert!(a.status.success() && b.status.success());
    for name in ["coefficients.csv", "samples.csv"] {
        assert_eq!(
            fs::read(dir.path().join("file").join(name)).unwrap(),
            fs::read(dir.path().join("builtin").join(name)).unwrap()
        );
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(acps(dir.path(), &["solve", "--degree", "many"]).status.code(), Some(2));
    assert_eq!(acps(dir.path(), &["solve", "--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(acps(dir.path(), &["solve", "--model", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(acps(dir.path(), &["frobnicate"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"variables":["y"],"initial":[1],"alpha":0.5,"equations":[[{"coeff":1,"powers":[1,0],"tpower":0}]]}"#,
    )
    .unwrap();
    let out = acps(dir.path(), &["solve", "--model", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("powers"));
}

#[test]
fn compare_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(dir.path(), &["compare", "--model", "sir", "--alpha", "1", "--degree", "9", "--rk-step", "1e-4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["S", "I", "R"] {
        let rows = read_csv(&dir.path().join(format!("compare_{name}.csv")));
        assert_eq!(rows[0], ["t", "reference", "acps", "abs_err", "rel_err"]);
        assert_eq!(rows.len(), 12);
        assert_eq!(column(&rows, 0)[10], 1.0);
    }
    let s = read_csv(&dir.path().join("compare_S.csv"));
    let abs = column(&s, 3);
    assert!(abs[1] < 1e-8);
    let r = read_csv(&dir.path().join("compare_R.csv"));
    let abs_r = column(&r, 3)[10];
    assert!((6.04e-10..6.04e-8).contains(&abs_r), "{abs_r}");
}

#[test]
fn compare_self_reference_has_zero_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(dir.path(), &["compare", "--reference", "acps"]);
    assert!(out.status.success());
    for name in ["S", "I", "R"] {
        let rows = read_csv(&dir.path().join(format!("compare_{name}.csv")));
        assert!(column(&rows, 3).iter().all(|&e| e == 0.0));
        assert!(column(&rows, 4).iter().all(|&e| e == 0.0));
    }
}

#[test]
fn compare_requires_integer_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(dir.path(), &["compare", "--alpha", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("compare requires --alpha 1"));
}

#[test]
fn conformable_reports() {
    let dir = tempfile::tempdir().unwrap();
    assert!(acps(dir.path(), &["conformable", "--beta", "2", "--alpha", "1"]).status.success());
    let rows = read_csv(&dir.path().join("conformable.csv"));
    assert_eq!(rows[0], ["field", "value"]);
    let ratio = rows.iter().find(|r| r[0] == "ratio").unwrap();
    assert_eq!(ratio[1], "1.0");

    assert!(acps(dir.path(), &["conformable", "--beta", "1", "--alpha", "0.5"]).status.success());
    let rows = read_csv(&dir.path().join("conformable.csv"));
    let ratio: f64 = rows.iter().find(|r| r[0] == "ratio").unwrap()[1].parse().unwrap();
    assert!((ratio - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);

    assert_eq!(acps(dir.path(), &["conformable", "--beta", "0", "--alpha", "0.5"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--alpha", "0.6", "--alpha", "0.8", "--alpha", "1", "--samples", "20"];
    assert!(acps(&dir.path().join("a"), &args).status.success());
    assert!(acps(&dir.path().join("b"), &args).status.success());
    for name in ["sweep_S.csv", "sweep_I.csv", "sweep_R.csv"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(name)).unwrap(),
            fs::read(dir.path().join("b").join(name)).unwrap()
        );
    }
}

#[test]
fn sweep_curves_approach_integer_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = acps(
        dir.path(),
        &["sweep", "--alpha", "0.6,0.7,0.8,0.9,1.0", "--degree", "9", "--t-end", "1", "--samples", "50"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["S", "I", "R"] {
        let rows = read_csv(&dir.path().join(format!("sweep_{name}.csv")));
        assert_eq!(rows[0], ["t", "alpha=0.6", "alpha=0.7", "alpha=0.8", "alpha=0.9", "alpha=1.0"]);
        let reference = column(&rows, 5);
        let gaps: Vec<f64> = (1..=4)
            .map(|k| column(&rows, k).iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{name}: {gaps:?}");
    }
}
