//! `quadrature-check` and `greens-check`: self-checks with a report table.
//! A failed check writes its table and then exits with the numerical code.

use std::path::Path;

use pentajm::greens::FiniteGreen;
use pentajm::linalg::{Matrix, SymMatrix};
use pentajm::potmat::{jacobi_matrix, nodes_and_weights, quadrature_integrate, sub_spectrum, weights_from_eigenvalues, WeightMode};
use pentajm::refsol::{expand_coefficients_with, five_term_residual, BasisSpec, Method};
use pentajm::specfun::ln_gamma_complex;
use pentajm::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::output::{num, Table};
use crate::{CliError, RunConfig, RunSummary};

/// Largest order for which strict interlacing is checked; beyond it the
/// gaps fall below double-precision resolution.
const INTERLACING_MAX_ORDER: usize = 10;
/// Samples of the five-term residual.
const RECURSION_SAMPLES: usize = 20;
/// Smallest allowed distance between a test energy and any eigenvalue.
const POLE_MARGIN: f64 = 1e-2;

struct Check {
    name: String,
    measured: f64,
    bound: f64,
    /// `true` when the measured value must exceed the bound.
    above: bool,
}

impl Check {
    fn below(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound, above: false }
    }
    fn above(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound, above: true }
    }
    fn pass(&self) -> bool {
        if self.above {
            self.measured > self.bound
        } else {
            self.measured <= self.bound
        }
    }
}

fn finish(cfg: &RunConfig, out: &Path, title: &str, file: &str, checks: &[Check]) -> Result<RunSummary, CliError> {
    let mut table = Table::new(title, &["check", "measured", "bound", "relation", "status"]);
    let mut report = Vec::new();
    for c in checks {
        let (rel, status) = (if c.above { ">" } else { "<=" }, if c.pass() { "pass" } else { "fail" });
        table.rows.push(vec![c.name.clone(), num(c.measured), num(c.bound), rel.into(), status.into()]);
        report.push(format!("[{}] {}: {:.3e} (bound {rel} {:.1e})", status.to_uppercase(), c.name, c.measured, c.bound));
    }
    let path = table.write(cfg, out, file)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass()).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        for line in &report {
            println!("{line}");
        }
        return Err(CliError::CheckFailed(format!("{} (see {})", failed.join(", "), path.display())));
    }
    Ok(RunSummary { files: vec![path], flagged_rows: 0, report })
}

fn ln_gamma(x: f64) -> Result<f64, CliError> {
    Ok(ln_gamma_complex(Complex64::new(x, 0.0))?.re)
}

/// Gauss rules from the Jacobi matrix: exactness below degree `2N`,
/// inexactness at degree `2N`, eigenvalue-only weights and interlacing;
/// then five-term residuals of the reference coefficients.
pub fn run_quadrature(cfg: &RunConfig, out: &Path) -> Result<RunSummary, CliError> {
    let tol = cfg.tolerances.quadrature;
    let mut checks = Vec::new();
    for &beta in &cfg.checks.betas {
        let basis = BasisSpec::laguerre(beta)?;
        let norm = ln_gamma(beta + 1.0)?;
        for &n in &cfg.checks.orders {
            let j = jacobi_matrix(&basis, n)?;
            let rule = nodes_and_weights(&j)?;
            let moment = |d: i32| -> Result<f64, CliError> { Ok((ln_gamma(beta + 1.0 + d as f64)? - norm).exp()) };
            let mut exact = 0.0f64;
            for d in 0..2 * n as i32 {
                let got = quadrature_integrate(&rule, |t| t.powi(d), WeightMode::WithWeight);
                exact = exact.max((got / moment(d)? - 1.0).abs());
            }
            let d = 2 * n as i32;
            let inexact = (quadrature_integrate(&rule, |t| t.powi(d), WeightMode::WithWeight) / moment(d)? - 1.0).abs();
            let sub = sub_spectrum(&j)?;
            let w = weights_from_eigenvalues(rule.nodes(), &sub)?;
            let weights = w.iter().zip(rule.weights()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let tag = format!("beta={beta} N={n}");
            checks.push(Check::below(format!("max rel error below degree 2N [{tag}]"), exact, tol));
            checks.push(Check::above(format!("rel error at degree 2N [{tag}]"), inexact, tol));
            checks.push(Check::below(format!("eigenvalue-only weight difference [{tag}]"), weights, tol));
            if n <= INTERLACING_MAX_ORDER {
                let gap = (0..sub.len())
                    .map(|k| (sub[k] - rule.nodes()[k]).min(rule.nodes()[k + 1] - sub[k]))
                    .fold(f64::INFINITY, f64::min);
                checks.push(Check::above(format!("min interlacing gap [{tag}]"), gap, 0.0));
            }
        }
    }
    let params = cfg.reference_params()?;
    let n_max = cfg.checks.recursion_n_max;
    let coeffs = expand_coefficients_with(&cfg.basis, &params, n_max, Method::Ratio, cfg.precision)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.checks.seed);
    let worst = (0..RECURSION_SAMPLES)
        .map(|_| five_term_residual(&cfg.basis, &params, coeffs.plus(), rng.gen_range(2..=n_max - 2)))
        .fold(0.0, f64::max);
    checks.push(Check::below(
        format!("five-term recursion residual [{} beta={}, {RECURSION_SAMPLES} rows <= {n_max}]", cfg.basis.family(), cfg.basis.beta()),
        worst,
        cfg.tolerances.recursion,
    ));
    finish(cfg, out, "quadrature-check", "quadrature_check.csv", &checks)
}

fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, rng.gen_range(-1.0..1.0));
        }
    }
    m
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let a = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    SymMatrix::from_fn(n, |i, j| (0..n).map(|k| a[(i, k)] * a[(j, k)]).sum::<f64>() + if i == j { 0.5 } else { 0.0 })
}

struct GreenErrors {
    route: f64,
    products: f64,
    defining: f64,
}

/// One random system: spectral sum vs eigenvalue-only elements, squared
/// eigenvector components from eigenvalues, and `G (H - z Omega) = I`.
fn green_system(seed: u64, index: usize, max_order: usize) -> Result<GreenErrors, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(2..=max_order);
    let h = random_sym(&mut rng, n);
    let omega = (index % 2 == 1).then(|| random_spd(&mut rng, n));
    let g = match &omega {
        Some(o) => FiniteGreen::generalized(h.clone(), o.clone())?,
        None => FiniteGreen::orthogonal(h.clone())?,
    };
    let z = loop {
        let z: f64 = rng.gen_range(-2.0..2.0);
        if g.eigenvalues().iter().all(|e| (e - z).abs() > POLE_MARGIN) {
            break z;
        }
    };
    let gm = g.matrix(z)?;
    let scale = gm.norm_max();
    let mut e = GreenErrors { route: 0.0, products: 0.0, defining: 0.0 };
    for i in 0..n {
        for j in 0..n {
            e.route = e.route.max((g.element_eigenvalue_only(i, j, z)? - gm[(i, j)]).abs() / scale);
        }
    }
    let v = &g.eigen().vectors;
    for k in 0..n {
        for i in 0..n {
            e.products = e.products.max((g.eigenvector_products(i, i, k)? - v[(i, k)] * v[(i, k)]).abs());
        }
    }
    let ident = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let a = Matrix::from_fn(n, n, |i, j| h.get(i, j) - z * omega.as_ref().map_or(ident(i, j), |o| o.get(i, j)));
    let prod = gm.matmul(&a);
    for i in 0..n {
        for j in 0..n {
            e.defining = e.defining.max((prod[(i, j)] - ident(i, j)).abs());
        }
    }
    Ok(e)
}

pub fn run_greens(cfg: &RunConfig, out: &Path) -> Result<RunSummary, CliError> {
    let c = &cfg.checks;
    let errors: Vec<GreenErrors> =
        (0..c.systems).into_par_iter().map(|i| green_system(c.seed, i, c.max_order)).collect::<Result<_, _>>()?;
    let worst = |f: fn(&GreenErrors) -> f64| errors.iter().map(f).fold(0.0, f64::max);
    let tol = cfg.tolerances.green;
    let tag = format!("{} systems, order <= {}", c.systems, c.max_order);
    let checks = [
        Check::below(format!("spectral vs eigenvalue-only elements [{tag}]"), worst(|e| e.route), tol),
        Check::below(format!("squared eigenvector components [{tag}]"), worst(|e| e.products), tol),
        Check::below(format!("G (H - z Omega) - I [{tag}]"), worst(|e| e.defining), tol),
    ];
    finish(cfg, out, "greens-check", "greens_check.csv", &checks)
}
