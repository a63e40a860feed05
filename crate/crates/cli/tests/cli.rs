use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pentajm(dir: &Path, args: &[&str], config: &str) -> Output {
    let cfg = dir.join("run.cfg");
    fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_pentajm"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .env("RUST_LOG", "error")
        .output()
        .unwrap()
}

fn data_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

const SMALL_SCATTER: &str = "scatter.size = 20\nenergy.min = 0.1\nenergy.max = 2\nenergy.points = 12\n";

#[test]
fn scatter_output_is_byte_identical_across_reruns_and_worker_counts() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for (sub, jobs) in [("a", "1"), ("b", "4"), ("c", "4")] {
        let out = dir.path().join(sub);
        let o = pentajm(dir.path(), &["scatter", "--out", out.to_str().unwrap(), "--jobs", jobs], SMALL_SCATTER);
        assert!(matches!(o.status.code(), Some(0 | 4)), "{o:?}");
        outputs.push(fs::read(out.join("scatter.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn scatter_header_echoes_config_and_names_columns() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    pentajm(dir.path(), &["scatter", "--out", out.to_str().unwrap()], SMALL_SCATTER);
    let text = fs::read_to_string(out.join("scatter.csv")).unwrap();
    assert!(text.contains("# scatter.size = 20\n"));
    assert!(text.contains("# potential.kind = exponential\n"));
    assert!(text.contains("# tolerance.unitarity = 1e-8\n"));
    assert!(text.contains(
        "# columns: energy,k,re_s,im_s,delta_unwrapped,unitarity_defect,n_used,boundary_defect,flags\n"
    ));
    let rows = data_rows(&out.join("scatter.csv"));
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert_eq!(r.len(), 9);
        assert_eq!(r[6], "20");
        let s = (r[2].parse::<f64>().unwrap().powi(2) + r[3].parse::<f64>().unwrap().powi(2)).sqrt();
        assert!((s - 1.0).abs() < 1e-10);
    }
}

#[test]
fn zero_potential_rows_are_reference_only() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let o = pentajm(
        dir.path(),
        &["scatter", "--out", out.to_str().unwrap()],
        "potential.kind = none\nscatter.size = 20\nenergy.points = 5\n",
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let rows = data_rows(&out.join("scatter.csv"));
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert_eq!(r[8], "reference-only");
        assert!(r[5].parse::<f64>().unwrap() < 1e-10);
    }
}

#[test]
fn unwrapped_phase_is_continuous_on_a_fine_grid() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    pentajm(
        dir.path(),
        &["scatter", "--out", out.to_str().unwrap()],
        "scatter.size = 40\nenergy.min = 0.05\nenergy.max = 3\nenergy.points = 400\ntolerance.boundary = 1\n",
    );
    let rows = data_rows(&out.join("scatter.csv"));
    let delta = column(&rows, 4);
    for (w, r) in delta.windows(2).zip(rows.windows(2)) {
        if r[0][8].is_empty() && r[1][8].is_empty() {
            assert!((w[1] - w[0]).abs() <= PI / 4.0, "jump {} -> {}", w[0], w[1]);
        }
    }
}

#[test]
fn boundary_defect_above_tolerance_flags_rows_with_exit_4() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let o = pentajm(dir.path(), &["scatter", "--out", out.to_str().unwrap()], SMALL_SCATTER);
    assert_eq!(o.status.code(), Some(4));
    let rows = data_rows(&out.join("scatter.csv"));
    assert!(rows.iter().all(|r| r[8].contains("boundary")));
}

#[test]
fn config_errors_exit_2_without_output() {
    let dir = TempDir::new().unwrap();
    for bad in ["bogus.key = 1\n", "lambda = -2\n", "basis = hermite\n", "scatter.size = many\n"] {
        let out = dir.path().join("never");
        let o = pentajm(dir.path(), &["scatter", "--out", out.to_str().unwrap()], bad);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("configuration error"));
        assert!(!out.exists(), "{bad}");
    }
}

#[test]
fn self_checks_pass_at_defaults() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    for cmd in ["quadrature-check", "greens-check"] {
        let o = pentajm(dir.path(), &[cmd, "--out", out.to_str().unwrap()], "");
        assert_eq!(o.status.code(), Some(0), "{cmd}: {o:?}");
    }
    let q = fs::read_to_string(out.join("quadrature_check.csv")).unwrap();
    assert!(q.contains("rel error at degree 2N"));
    assert!(q.contains("five-term recursion residual"));
    assert!(!q.contains(",fail"));
}

#[test]
fn corrupted_tolerance_fails_self_checks_with_exit_3() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let o = pentajm(dir.path(), &["greens-check", "--out", out.to_str().unwrap()], "tolerance.green = 1e-30\n");
    assert_eq!(o.status.code(), Some(3));
    let report = fs::read_to_string(out.join("greens_check.csv")).unwrap();
    assert!(report.contains(",fail"));
    let o = pentajm(dir.path(), &["quadrature-check", "--out", out.to_str().unwrap()], "tolerance.quadrature = 1e-3\n");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reference_convergence_writes_per_size_files_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let o = pentajm(
        dir.path(),
        &["reference-convergence", "--out", out.to_str().unwrap()],
        "reference.sizes = 1000, 100\nreference.far_points = 51\nreference.near_points = 21\n",
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    for name in ["far_n100", "far_n1000", "near_n100", "near_n1000"] {
        let text = fs::read_to_string(out.join(format!("reference_{name}.csv"))).unwrap();
        assert!(text.contains("# columns: x,re_exact,im_exact,re_series,im_series,abs_error\n"));
    }
    let rows = data_rows(&out.join("reference_summary.csv"));
    assert_eq!(rows.len(), 4);
    assert_eq!((rows[0][0].as_str(), rows[0][1].as_str()), ("100", "far"));
    let far = column(&rows[..2], 2);
    assert!(far[1] < far[0]);
    let rows = data_rows(&out.join("reference_far_n1000.csv"));
    assert_eq!(rows.len(), 51);
    for r in rows {
        let v: Vec<f64> = r.iter().map(|s| s.parse().unwrap()).collect();
        let err = ((v[1] - v[3]).powi(2) + (v[2] - v[4]).powi(2)).sqrt();
        assert!((err - v[5]).abs() <= 1e-12 * (1.0 + err));
    }
}

#[test]
fn precision_flag_is_accepted_and_echoed() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o");
    let o = pentajm(
        dir.path(),
        &["scatter", "--out", out.to_str().unwrap(), "--precision", "extended"],
        "potential.kind = none\nscatter.size = 10\nenergy.points = 3\n",
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(fs::read_to_string(out.join("scatter.csv")).unwrap().contains("# precision = extended\n"));
}
