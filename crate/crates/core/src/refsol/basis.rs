use num_complex::Complex64;

use super::{BasisFamily, BasisSpec, PhysicalParams};
use crate::error::{Error, Result};
use crate::specfun::{chi_reference, ln_gamma_complex, Sign};

const RESCALE_AT: f64 = 1e200;

/// Runs the normalized Laguerre recursion
/// `psi_{n+1} = [(2n+beta+1-t) psi_n - sqrt(n(n+beta)) psi_{n-1}] / sqrt((n+1)(n+beta+1))`
/// with `psi_0 = 1/sqrt(Gamma(beta+1))`, handing each `psi_n` (in scaled units)
/// to `visit` together with the current log scale.
fn walk(beta: f64, t: f64, count: usize, mut visit: impl FnMut(usize, f64, f64)) {
    let lg = ln_gamma_complex(Complex64::new(beta + 1.0, 0.0)).map(|z| z.re).unwrap_or(f64::NAN);
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut ln_scale = -0.5 * lg;
    for n in 0..count {
        visit(n, cur, ln_scale);
        let nf = n as f64;
        let next = ((2.0 * nf + beta + 1.0 - t) * cur - (nf * (nf + beta)).sqrt() * prev)
            / ((nf + 1.0) * (nf + beta + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
    }
}

/// Log of the `n`-independent prefactor and the polynomial argument.
fn envelope(basis: &BasisSpec, x: f64) -> (f64, f64) {
    match basis.family() {
        BasisFamily::Laguerre => (-0.5 * x + basis.alpha() * x.ln(), x),
        BasisFamily::Oscillator => {
            let y = x * x;
            (-0.5 * y + basis.alpha() * x.ln() + 0.5 * std::f64::consts::LN_2, y)
        }
    }
}

/// `phi_0(x), ..., phi_{count-1}(x)` at `x = lambda r`.
pub fn basis_eval_all(basis: &BasisSpec, x: f64, count: usize) -> Vec<f64> {
    let (ln_env, t) = envelope(basis, x);
    let mut out = Vec::with_capacity(count);
    walk(basis.beta(), t, count, |_, psi, ln_scale| out.push(psi * (ln_env + ln_scale).exp()));
    out
}

/// Normalized basis function `phi_n(x)` at `x = lambda r > 0`.
pub fn basis_eval(basis: &BasisSpec, n: usize, x: f64) -> f64 {
    basis_eval_all(basis, x, n + 1)[n]
}

/// Partial sums `sum_{n < N} F_n phi_n(x)` on `grid` for every `N` in
/// `checkpoints` (ascending), sharing one recursion pass per grid point.
pub fn reconstruct_partial_sums(
    basis: &BasisSpec,
    coeffs: &[Complex64],
    grid: &[f64],
    checkpoints: &[usize],
) -> Result<Vec<Vec<Complex64>>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("checkpoints must be ascending".into()));
    }
    let top = checkpoints.last().copied().unwrap_or(0);
    if top > coeffs.len() {
        return Err(Error::InvalidInput(format!("{top} terms requested but only {} coefficients", coeffs.len())));
    }
    if let Some(x) = grid.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::InvalidInput(format!("grid points must be positive, got {x}")));
    }
    let mut out = vec![Vec::with_capacity(grid.len()); checkpoints.len()];
    for &x in grid {
        let (ln_env, t) = envelope(basis, x);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut acc_ln_scale = f64::NAN;
        let mut next_cp = 0;
        while next_cp < checkpoints.len() && checkpoints[next_cp] == 0 {
            out[next_cp].push(acc);
            next_cp += 1;
        }
        walk(basis.beta(), t, top, |n, psi, ln_scale| {
            if acc_ln_scale.is_nan() {
                acc_ln_scale = ln_scale;
            } else if ln_scale != acc_ln_scale {
                acc *= (acc_ln_scale - ln_scale).exp();
                acc_ln_scale = ln_scale;
            }
            acc += coeffs[n] * psi;
            while next_cp < checkpoints.len() && checkpoints[next_cp] == n + 1 {
                out[next_cp].push(acc * (ln_env + acc_ln_scale).exp());
                next_cp += 1;
            }
        });
    }
    Ok(out)
}

/// Partial sum of the expansion with `n_terms` terms on `grid` (`x = lambda r`).
pub fn reconstruct_reference(
    basis: &BasisSpec,
    coeffs: &[Complex64],
    grid: &[f64],
    n_terms: usize,
) -> Result<Vec<Complex64>> {
    Ok(reconstruct_partial_sums(basis, coeffs, grid, &[n_terms])?.remove(0))
}

/// Exact `chi_+(r)` on a grid given in `x = lambda r`.
pub fn exact_reference(params: &PhysicalParams, grid: &[f64]) -> Result<Vec<Complex64>> {
    grid.iter().map(|&x| chi_reference(Sign::Plus, params, x / params.lambda())).collect()
}
