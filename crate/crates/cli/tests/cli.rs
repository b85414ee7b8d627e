use std::path::Path;
use std::process::{Command, Output};

fn fracairy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracairy")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn solve_problem2(out: &Path) -> Output {
    fracairy(&["solve", "--problem", "2", "--alpha", "0.5", "--preset", "psi1=poly:2", "--out", out.to_str().unwrap()])
}

#[test]
fn half_line_solve_writes_grid_with_zero_corner_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.csv");
    let o = solve_problem2(&out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,t,u"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 257 * 81);
    let corner: Vec<_> = rows.iter().filter(|r| r[1] == "0").collect();
    assert_eq!(corner.len(), 81);
    assert!(corner.iter().all(|r| r[2] == "0"));
    // Row-major in t, then x.
    assert_eq!(rows[81][1], "0.00390625");
    assert_eq!(rows[81][0], "0");
}

#[test]
fn identical_runs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(solve_problem2(&a).status.code(), Some(0));
    assert_eq!(solve_problem2(&b).status.code(), Some(0));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn order_out_of_range_is_a_config_error() {
    let o = fracairy(&["solve", "--problem", "1", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0<alpha<1"), "{}", stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[run]\nproblem = 1\nalpha = 1.5\n").unwrap();
    let o = fracairy(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0<alpha<1"), "{}", stderr(&o));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[run]\nproblem = 2\nalpha = 1.5\nn_steps = 16\n[problem2]\npsi1 = \"poly:2\"\n").unwrap();
    let out = dir.path().join("u.csv");
    let o = fracairy(&["solve", "--config", cfg.to_str().unwrap(), "--alpha", "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 1 + 17 * 81);
}

#[test]
fn unknown_config_keys_and_bad_presets_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[run]\nalpha = 0.5\nsteps = 10\n").unwrap();
    let o = fracairy(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("steps"));

    let o = fracairy(&["solve", "--problem", "2", "--alpha", "0.5", "--preset", "psi1=wave:3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fracairy(&["solve", "--problem", "2", "--alpha", "0.5", "--preset", "phi1=poly:2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fracairy(&["solve", "--problem", "1", "--alpha", "0.5", "--preset", "phi1=cos"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lemma_report_contains_the_log_moment() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.toml");
    let o = fracairy(&["verify", "--battery", "lemmas", "--alpha", "0.5", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("expected = 0.1666667"));
    let doc: toml::Value = toml::from_str(&text).unwrap();
    let checks = doc["check"].as_array().unwrap();
    let lm = checks
        .iter()
        .find(|c| c["id"].as_str().unwrap().starts_with("log_moment.real_negative"))
        .expect("log-moment record");
    assert!((lm["expected"].as_float().unwrap() - 1.0 / 6.0).abs() < 1e-7);
    assert!(lm["pass"].as_bool().unwrap());
    for c in checks {
        for key in ["id", "measured", "expected", "tol", "pass"] {
            assert!(c.get(key).is_some(), "record without {key}");
        }
    }
    assert_eq!(doc["failed"].as_integer(), Some(0));
}

#[test]
fn rejected_time_gives_failed_check_exit_code() {
    let o = fracairy(&["verify", "--battery", "lemmas", "--alpha", "0.5", "--t-list", "0,1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("rejected input"));
}

#[test]
fn numerical_failure_exit_code() {
    let o = fracairy(&["specfun", "eval", "--function", "mittag-leffler", "--alpha", "0.3", "--z", "-5"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn special_function_point_values() {
    let o = fracairy(&["specfun", "eval", "--function", "m-wright", "--nu", "0.5", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    let re: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    let exact = (-0.25f64).exp() / std::f64::consts::PI.sqrt();
    assert!((re - exact).abs() < 1e-12);
}

#[test]
fn kernel_table_is_row_major_in_t() {
    let o = fracairy(&["kernel", "table", "--alpha", "0.5", "--x-min", "-1", "--x-max", "1", "--nx", "5", "--t", "0.5,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,t,value");
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("-1,0.5,"));
    assert!(lines[6].starts_with("-1,1,"));
    let o = fracairy(&["kernel", "eval", "--alpha", "0.5", "--x", "-1", "--t", "1"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().nth(1), Some(lines[6]));
}

#[test]
fn sampled_boundary_data_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("psi1.csv");
    let values: Vec<f64> = (0..=32).map(|i| (i as f64 / 32.0).powi(2)).collect();
    let f = std::fs::File::create(&data).unwrap();
    fracairy::csvio::write_profile(f, &data, 0.0, 1.0, &values).unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let base = ["solve", "--problem", "2", "--alpha", "0.5", "--n-steps", "32"];
    let from_file = format!("psi1={}", data.display());
    let o = fracairy(&[&base[..], &["--preset", &from_file, "--out", a.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = fracairy(&[&base[..], &["--preset", "psi1=poly:2", "--out", b.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    let read = |p: &Path| -> Vec<f64> {
        std::fs::read_to_string(p).unwrap().lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
    };
    let (ua, ub) = (read(&a), read(&b));
    let worst = ua.iter().zip(&ub).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    // Sampled data go through the L1 scheme, the preset through its exact Caputo derivative.
    assert!(worst < 3e-3, "sampled data differ from the exact preset by {worst}");
}

#[test]
fn solve_report_lists_boundary_checks() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = (dir.path().join("u.csv"), dir.path().join("r.toml"));
    let o = fracairy(&[
        "solve", "--problem", "2", "--alpha", "0.5", "--preset", "psi1=poly:2", "--preset", "psi2=sin:1",
        "--out", out.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: toml::Value = toml::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let ids: Vec<&str> = doc["check"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["boundary.problem2.psi1", "boundary.problem2.psi2"]);
}
