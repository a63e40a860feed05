use num_complex::{Complex, Complex64};
use num_traits::Float;
use twofloat::TwoFloat;

use super::{coefficients_generic, initial_coefficients, BasisSpec, PhysicalParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Forward five-term recursion solved for `F_{n+2}`.
    Direct,
    /// Recursion for `R_n = F_n / F_{n-1}`, then `F_n = F_0 prod R_m`.
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    /// Double-double arithmetic (about 31 significant digits).
    Extended,
}

/// Seeds with relative size below this trigger the extended direct fallback
/// of the ratio method.
const TINY_SEED: f64 = 1e-8;
/// Residual level above which a precision warning is logged.
const RESIDUAL_WARN: f64 = 1e-8;

/// `F_n^+-` for `n = 0..=n_max`; `minus[n] = conj(plus[n])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
    n_max: usize,
    max_residual: f64,
    method: Method,
    precision: Precision,
}

impl ExpansionCoefficients {
    pub fn plus(&self) -> &[Complex64] {
        &self.plus
    }
    pub fn minus(&self) -> &[Complex64] {
        &self.minus
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }
    /// `C_n = Re F_n^+`.
    pub fn cos_part(&self, n: usize) -> f64 {
        self.plus[n].re
    }
    /// `S_n = Im F_n^+`.
    pub fn sin_part(&self, n: usize) -> f64 {
        self.plus[n].im
    }
    /// Largest sampled relative five-term residual.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }
    /// Method actually used (the ratio method may fall back to `Direct`).
    pub fn method(&self) -> Method {
        self.method
    }
    pub fn precision(&self) -> Precision {
        self.precision
    }
}

pub fn expand_coefficients(
    basis: &BasisSpec,
    params: &PhysicalParams,
    n_max: usize,
    method: Method,
) -> Result<ExpansionCoefficients> {
    expand_coefficients_with(basis, params, n_max, method, Precision::Double)
}

pub fn expand_coefficients_with(
    basis: &BasisSpec,
    params: &PhysicalParams,
    n_max: usize,
    method: Method,
    precision: Precision,
) -> Result<ExpansionCoefficients> {
    if n_max < 4 {
        return Err(Error::InvalidInput(format!("expand_coefficients needs n_max >= 4, got {n_max}")));
    }
    let seeds = initial_coefficients(basis, params)?;
    let (f0, f1) = (seeds.f0_plus, seeds.f1_plus);
    let mut method = method;
    let mut precision = precision;
    if method == Method::Ratio {
        let (f2, f3) = seeds_23(basis, params, f0, f1);
        let scale = f0.norm().max(f1.norm()).max(f2.norm()).max(f3.norm());
        if [f0, f1, f2].iter().any(|f| f.norm() <= TINY_SEED * scale) {
            log::warn!("tiny seed coefficient; switching to extended-precision direct recursion");
            method = Method::Direct;
            precision = Precision::Extended;
        }
    }
    let plus = match precision {
        Precision::Double => propagate::<f64>(basis, params, f0, f1, n_max, method)?,
        Precision::Extended => propagate::<TwoFloat>(basis, params, f0, f1, n_max, method)?,
    };
    let minus = plus.iter().map(|f| f.conj()).collect();
    let max_residual = sampled_residual(basis, params, &plus);
    if max_residual > RESIDUAL_WARN {
        log::warn!("five-term residual {max_residual:e} exceeds {RESIDUAL_WARN:e}; consider extended precision");
    }
    Ok(ExpansionCoefficients { plus, minus, n_max, max_residual, method, precision })
}

/// `F_2` and `F_3` from `F_0`, `F_1` (recursion rows 0 and 1).
fn seeds_23(basis: &BasisSpec, params: &PhysicalParams, f0: Complex64, f1: Complex64) -> (Complex64, Complex64) {
    let (a0, b0, c0) = super::recursion_coefficients(basis, params, 0);
    let (a1, b1, c1) = super::recursion_coefficients(basis, params, 1);
    let f2 = -(f0 * a0 + f1 * b0) / c0;
    let f3 = (f0 * (a0 / c0 - b0 / b1) + f1 * (b0 / c0 - a1 / b1)) * (b1 / c1);
    (f2, f3)
}

fn propagate<T: Float>(
    basis: &BasisSpec,
    params: &PhysicalParams,
    f0: Complex64,
    f1: Complex64,
    n_max: usize,
    method: Method,
) -> Result<Vec<Complex64>> {
    let t = |x: f64| T::from(x).unwrap();
    let mu = t(params.mu());
    let nu = t(params.nu());
    let beta = t(basis.beta());
    let family = basis.family();
    // coefficient rows n = -2 ..= n_max, stored at offset 2
    let rows: Vec<(T, T, T)> =
        (-2..=n_max as i64).map(|n| coefficients_generic(family, beta, mu * mu, nu * nu, n)).collect();
    let co = |n: i64| rows[(n + 2) as usize];
    let cz = |z: Complex64| Complex::new(t(z.re), t(z.im));
    let mut f: Vec<Complex<T>> = Vec::with_capacity(n_max + 1);
    f.push(cz(f0));
    f.push(cz(f1));
    let (a0, b0, c0) = co(0);
    let (a1, b1, c1) = co(1);
    let f2 = -(f[0].scale(a0) + f[1].scale(b0)).unscale(c0);
    let f3 = (f[0].scale(a0 / c0 - b0 / b1) + f[1].scale(b0 / c0 - a1 / b1)).scale(b1 / c1);
    f.push(f2);
    f.push(f3);
    match method {
        Method::Direct => {
            for n in 2..(n_max as i64 - 1) {
                let (a, b, c) = co(n);
                let bm = co(n - 1).1;
                let cm = co(n - 2).2;
                if c == T::zero() {
                    return Err(Error::DivisionByZero { index: n as usize });
                }
                let i = n as usize;
                let next = -(f[i].scale(a) + f[i - 1].scale(bm) + f[i + 1].scale(b) + f[i - 2].scale(cm)).unscale(c);
                f.push(next);
            }
        }
        Method::Ratio => {
            let zero = Complex::new(T::zero(), T::zero());
            let mut r = vec![zero; n_max + 1];
            for i in 1..=3 {
                if f[i - 1] == zero {
                    return Err(Error::DivisionByZero { index: i });
                }
                r[i] = f[i] / f[i - 1];
            }
            for n in 2..(n_max as i64 - 1) {
                let (a, b, c) = co(n);
                let bm = co(n - 1).1;
                let cm = co(n - 2).2;
                let i = n as usize;
                if c == T::zero() {
                    return Err(Error::DivisionByZero { index: i });
                }
                for j in [i - 1, i, i + 1] {
                    if r[j] == zero {
                        return Err(Error::DivisionByZero { index: j });
                    }
                }
                let inner = (r[i - 1].inv().scale(cm) + bm) / r[i] + a;
                r[i + 2] = -(inner / r[i + 1].scale(c)) - b / c;
            }
            for i in 4..=n_max {
                let next = f[i - 1] * r[i];
                f.push(next);
            }
        }
    }
    Ok(f.into_iter().map(|z| Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())).collect())
}

/// Relative five-term residual at row `n`:
/// `|a_n F_n + b_{n-1} F_{n-1} + b_n F_{n+1} + c_{n-2} F_{n-2} + c_n F_{n+2}|`
/// over the sum of the magnitudes of the five terms.
pub fn five_term_residual(basis: &BasisSpec, params: &PhysicalParams, f: &[Complex64], n: usize) -> f64 {
    let co = |m: i64| super::recursion_coefficients(basis, params, m);
    let ni = n as i64;
    let (a, b, c) = co(ni);
    let bm = co(ni - 1).1;
    let cm = co(ni - 2).2;
    let get = |m: i64| if m < 0 { Complex64::new(0.0, 0.0) } else { f[m as usize] };
    let terms = [get(ni) * a, get(ni - 1) * bm, get(ni + 1) * b, get(ni - 2) * cm, get(ni + 2) * c];
    let total: Complex64 = terms.iter().sum();
    let size: f64 = terms.iter().map(|t| t.norm()).sum();
    if size == 0.0 {
        0.0
    } else {
        total.norm() / size
    }
}

fn sampled_residual(basis: &BasisSpec, params: &PhysicalParams, f: &[Complex64]) -> f64 {
    let last = f.len() - 3;
    let step = (last / 64).max(1);
    (0..=last).step_by(step).chain(std::iter::once(last)).map(|n| five_term_residual(basis, params, f, n)).fold(0.0, f64::max)
}
