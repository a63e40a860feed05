//! `scatter`: S-matrix and phase shift over an energy grid.

use std::path::Path;

use pentajm::smatrix::{converge_size_with, unwrap_phases, InnerProblem, ScatterOptions, ScatteringResult};
use pentajm::Error;
use rayon::prelude::*;

use crate::config::SizeChoice;
use crate::output::{num, Table};
use crate::{CliError, RunConfig, RunSummary};

/// Row flags. All but `reference-only` count as failures.
pub const FLAG_POLE: &str = "pole";
pub const FLAG_ERROR: &str = "error";
pub const FLAG_UNITARITY: &str = "unitarity";
pub const FLAG_BOUNDARY: &str = "boundary";
pub const FLAG_UNCONVERGED: &str = "unconverged";
pub const FLAG_REFERENCE_ONLY: &str = "reference-only";

fn sweep(problem: &InnerProblem, ks: &[f64]) -> Vec<pentajm::Result<ScatteringResult>> {
    ks.par_iter().map(|&k| problem.scatter(k)).collect()
}

pub fn run(cfg: &RunConfig, out: &Path) -> Result<RunSummary, CliError> {
    let energies = &cfg.scatter.energies;
    let ks: Vec<f64> = energies.iter().map(|e| (2.0 * e).sqrt()).collect();
    let params = cfg.params_at_k(ks[0])?;
    let options = ScatterOptions {
        quadrature_order: cfg.scatter.quadrature_order,
        green_cross_check: false,
        precision: cfg.precision,
    };
    let mut notes = Vec::new();
    let (results, converged) = match cfg.scatter.size {
        SizeChoice::Fixed(n) => {
            let problem = InnerProblem::new(&cfg.basis, &params, &cfg.potential, n, options)?;
            notes.push(format!("inner size N = {n}"));
            notes.push(format!("potential tail ratio = {:e}", problem.tail_ratio()));
            (sweep(&problem, &ks), true)
        }
        SizeChoice::Auto(auto) => {
            let outcome = converge_size_with(&cfg.basis, &params, &cfg.potential, &ks, auto, options, &sweep)?;
            notes.push(format!("auto size: N = {}, converged = {}", outcome.size, outcome.converged));
            for (n, change) in &outcome.history {
                notes.push(format!("auto size history: N = {n}, max phase change = {change:e}"));
            }
            (outcome.results, outcome.converged)
        }
    };
    let tol = cfg.tolerances;
    let reference_only = cfg.potential.is_zero();
    let deltas: Vec<f64> = results.iter().map(|r| r.as_ref().map_or(f64::NAN, |r| r.delta)).collect();
    let unwrapped = unwrap_phases(&deltas);

    let mut table = Table::new(
        "scatter",
        &["energy", "k", "re_s", "im_s", "delta_unwrapped", "unitarity_defect", "n_used", "boundary_defect", "flags"],
    );
    table.notes = notes;
    let mut flagged = 0;
    let mut counts = std::collections::BTreeMap::<&str, usize>::new();
    for (i, res) in results.iter().enumerate() {
        let mut flags: Vec<&str> = Vec::new();
        let row = match res {
            Ok(r) => {
                let boundary = r.boundary_defect_prev.max(r.boundary_defect_last);
                if !(r.unitarity_defect <= tol.unitarity) {
                    flags.push(FLAG_UNITARITY);
                }
                if !(boundary <= tol.boundary) {
                    flags.push(FLAG_BOUNDARY);
                }
                if !converged {
                    flags.push(FLAG_UNCONVERGED);
                }
                vec![
                    num(energies[i]),
                    num(ks[i]),
                    num(r.s.re),
                    num(r.s.im),
                    num(unwrapped[i]),
                    num(r.unitarity_defect),
                    r.size.to_string(),
                    num(boundary),
                ]
            }
            Err(e) => {
                flags.push(if matches!(e, Error::SpectrumPole { .. }) { FLAG_POLE } else { FLAG_ERROR });
                log::warn!("E = {}: {e}", energies[i]);
                let nan = num(f64::NAN);
                vec![num(energies[i]), num(ks[i]), nan.clone(), nan.clone(), nan.clone(), nan.clone(), "0".into(), nan]
            }
        };
        if !flags.is_empty() {
            flagged += 1;
        }
        if reference_only {
            flags.push(FLAG_REFERENCE_ONLY);
        }
        for f in &flags {
            *counts.entry(f).or_default() += 1;
        }
        let mut row = row;
        row.push(flags.join("|"));
        table.rows.push(row);
    }
    let path = table.write(cfg, out, "scatter.csv")?;
    let mut report = vec![format!("{} energies written to {}", results.len(), path.display())];
    for (flag, n) in counts {
        report.push(format!("{n} rows flagged '{flag}'"));
    }
    Ok(RunSummary { files: vec![path], flagged_rows: flagged, report })
}
