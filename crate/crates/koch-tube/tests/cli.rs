use std::process::{Command, Output};

fn koch(args: &[&str], workers: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_koch-tube"));
    c.args(args);
    if let Some(w) = workers {
        c.env("KOCH_TUBE_WORKERS", w);
    }
    c.output().expect("run koch-tube")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn dims_json() {
    let out = koch(&["dims", "--n", "3", "--h-mode", "approximate"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    assert_eq!(v["meta"]["N"], "3");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = koch(&["tube", "--eps-min", "0.9"], None);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "config");
    assert_eq!(koch(&["bogus"], None).status.code(), Some(2));
    assert_eq!(koch(&["tube", "--m", "0"], None).status.code(), Some(2));
    assert_eq!(koch(&["tube", "--n", "300", "--a-max", "100"], None).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs_and_workers() {
    let args = ["oracle", "--count", "2", "--samples", "20000", "--seed", "5"];
    let a = koch(&args, Some("1"));
    let b = koch(&args, Some("1"));
    let c = koch(&args, Some("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(csv_rows(&a).len(), 2);
}

#[test]
fn h_profile_stays_in_range() {
    let out = koch(&["h-profile", "--samples-per-period", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 6);
    let mu = koch_tube::cantor::mu();
    for r in &rows {
        let h: f64 = r[1].parse().unwrap();
        assert!((0.0..mu).contains(&h), "{r:?}");
    }
    assert!(String::from_utf8_lossy(&out.stdout).contains("# verdict:"));
}

#[test]
fn compare_on_the_default_grid() {
    let out = koch(&["compare", "--samples-per-period", "12", "--samples", "200000"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(csv_rows(&out).len(), 5);
}

#[test]
fn writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("koch-tube-coeffs-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = koch(&["coeffs", "--n", "2", "--m", "20", "-o", p], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    std::fs::remove_file(&path).ok();
}
