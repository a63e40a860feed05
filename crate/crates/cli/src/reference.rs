//! `reference-convergence`: partial sums of the regular reference solution
//! against the exact function on a far and a near window of `x = lambda r`.

use std::path::Path;

use pentajm::refsol::{exact_reference, expand_coefficients_with, reconstruct_partial_sums, Method};
use pentajm::Complex64;
use rayon::prelude::*;

use crate::output::{num, Table};
use crate::{CliError, RunConfig, RunSummary};

const CHUNK: usize = 16;

fn linear(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn logarithmic(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Partial sums for every size in `sizes`, evaluated in parallel chunks.
fn partial_sums(
    cfg: &RunConfig,
    coeffs: &[Complex64],
    x: &[f64],
    sizes: &[usize],
) -> Result<Vec<Vec<Complex64>>, CliError> {
    let chunks: Vec<Vec<Vec<Complex64>>> = x
        .par_chunks(CHUNK)
        .map(|c| reconstruct_partial_sums(&cfg.basis, coeffs, c, sizes))
        .collect::<Result<_, _>>()?;
    let mut out = vec![Vec::with_capacity(x.len()); sizes.len()];
    for chunk in chunks {
        for (acc, part) in out.iter_mut().zip(chunk) {
            acc.extend(part);
        }
    }
    Ok(out)
}

struct WindowError {
    max_abs: f64,
    max_rel: f64,
}

pub fn run(cfg: &RunConfig, out: &Path) -> Result<RunSummary, CliError> {
    let params = cfg.reference_params()?;
    let rs = &cfg.reference;
    let top = *rs.sizes.last().expect("validated non-empty");
    let coeffs = expand_coefficients_with(&cfg.basis, &params, top.max(5) - 1, Method::Ratio, cfg.precision)?;
    let windows = [
        ("far", linear(rs.far.0, rs.far.1, rs.far_points)),
        ("near", logarithmic(rs.near.0, rs.near.1, rs.near_points)),
    ];
    let mut summary = Table::new(
        "reference-convergence summary",
        &["n_terms", "window", "max_abs_error", "max_rel_error"],
    );
    summary.notes.push(format!("mu = {}, nu = {}, lambda = {}", params.mu(), params.nu(), params.lambda()));
    summary.notes.push(format!("largest five-term residual = {:e}", coeffs.max_residual()));
    let mut files = Vec::new();
    let mut report = Vec::new();
    let mut errors: Vec<Vec<WindowError>> = Vec::new();
    for (name, x) in &windows {
        let exact: Vec<Complex64> = x
            .par_chunks(CHUNK)
            .map(|c| exact_reference(&params, c))
            .collect::<Result<Vec<_>, _>>()?
            .concat();
        let sums = partial_sums(cfg, coeffs.plus(), x, &rs.sizes)?;
        let mut per_size = Vec::new();
        for (&n, series) in rs.sizes.iter().zip(&sums) {
            let mut table = Table::new(
                format!("reference-convergence {name} window, {n} terms"),
                &["x", "re_exact", "im_exact", "re_series", "im_series", "abs_error"],
            );
            let mut e = WindowError { max_abs: 0.0, max_rel: 0.0 };
            for ((&xi, ex), s) in x.iter().zip(&exact).zip(series) {
                let abs = (s - ex).norm();
                e.max_abs = e.max_abs.max(abs);
                e.max_rel = e.max_rel.max(abs / ex.norm());
                table.rows.push(vec![num(xi), num(ex.re), num(ex.im), num(s.re), num(s.im), num(abs)]);
            }
            if !(e.max_abs.is_finite() && e.max_rel.is_finite()) {
                return Err(CliError::Numerical(format!("non-finite partial sum with {n} terms on the {name} window")));
            }
            files.push(table.write(cfg, out, &format!("reference_{name}_n{n}.csv"))?);
            summary.rows.push(vec![n.to_string(), (*name).to_string(), num(e.max_abs), num(e.max_rel)]);
            report.push(format!("{name:>4} window, N = {n:>6}: max abs error {:.3e}, max rel error {:.3e}", e.max_abs, e.max_rel));
            per_size.push(e);
        }
        errors.push(per_size);
    }
    let (far, near) = (&errors[0], &errors[1]);
    let far_decreasing = far.windows(2).all(|w| w[1].max_abs <= w[0].max_abs);
    let near_worse = near.last().zip(far.last()).is_some_and(|(n, f)| n.max_rel > f.max_rel);
    let note_decreasing = format!("far-window error decreasing with N: {far_decreasing}");
    let note_near = format!("near-window relative error above far-window at N = {top}: {near_worse}");
    summary.notes.push(note_decreasing.clone());
    summary.notes.push(note_near.clone());
    report.push(note_decreasing);
    report.push(note_near);
    files.push(summary.write(cfg, out, "reference_summary.csv")?);
    Ok(RunSummary { files, flagged_rows: 0, report })
}
