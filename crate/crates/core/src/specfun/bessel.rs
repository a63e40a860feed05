//! Bessel and Hankel functions of imaginary order `i nu` on the positive real
//! axis.
//!
//! Two evaluation routes are combined:
//! - the ascending series `J_{i nu}(y) = (y/2)^{i nu} / Gamma(1 + i nu) *
//!   sum_k (-(y/2)^2)^k / (k! (1 + i nu)_k)`, summed in double-double complex
//!   arithmetic because the alternating terms grow like `e^y` before they
//!   cancel;
//! - the large-argument Hankel expansion
//!   `A_+ H^+_{i nu}(y) ~ sqrt(2/(pi y)) e^{i(y - pi/4)} sum_k i^k a_k / y^k`
//!   with real `a_k = prod_{j<=k} (-(4 nu^2 + (2j-1)^2)) / (k! 8^k)`, truncated
//!   at its smallest term.
//!
//! The asymptotic route is used whenever its truncation estimate meets the
//! budget, otherwise the series. With the default budget both routes together
//! cover `nu` up to roughly 12 for every `y > 0`; beyond that a
//! [`Error::NonConvergence`] is reported instead of an inaccurate value.
//!
//! Hankel functions are returned in the scaled form `A_+- H^+-_{i nu}` with
//! `A_+- = e^{-+ pi nu / 2}`, which is O(1) for all `nu`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

use super::{ln_gamma_complex, AccuracyBudget, Sign};
use crate::error::{Error, Result};
use crate::refsol::PhysicalParams;

type Cdd = Complex<TwoFloat>;

const DD_EPS: f64 = 1.0e-32;
/// Beyond this argument the double-double series loses more than ~1e-6 to
/// cancellation and is not attempted.
const SERIES_Y_MAX: f64 = 60.0;

fn to_f64(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

/// A series result with its estimated relative error.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    pub rel_err: f64,
    pub terms: usize,
}

struct SeriesParts {
    ln_prefactor: Complex64,
    sum: Complex64,
    rel_err: f64,
    terms: usize,
}

fn series_parts(nu: f64, y: f64, budget: AccuracyBudget) -> Result<SeriesParts> {
    let half = TwoFloat::from(y) / 2.0;
    let q = half * half;
    let nu_dd = TwoFloat::from(nu);
    let nu2 = nu_dd * nu_dd;
    let mut t = Cdd::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
    let mut s = t;
    let mut tmax = 1.0f64;
    let mut k = 0usize;
    loop {
        if k >= budget.max_terms {
            return Err(Error::NonConvergence { what: "imaginary-order Bessel series", terms: k });
        }
        let kk = TwoFloat::from((k + 1) as f64);
        // t <- t * (-q) / ((k+1) (k+1 + i nu))
        let scale = -q / (kk * (kk * kk + nu2));
        t = Cdd::new(
            (t.re * kk + t.im * nu_dd) * scale,
            (t.im * kk - t.re * nu_dd) * scale,
        );
        s += t;
        k += 1;
        let tn = t.re.hi().abs() + t.im.hi().abs();
        tmax = tmax.max(tn);
        let sn = s.re.hi().abs() + s.im.hi().abs();
        if (k as f64) > y && tn <= 1e-20 * sn {
            break;
        }
    }
    let sum = Complex64::new(to_f64(s.re), to_f64(s.im));
    let ln_prefactor = Complex64::new(0.0, nu * (0.5 * y).ln())
        - ln_gamma_complex(Complex64::new(1.0, nu))?;
    let rel_err = (tmax * DD_EPS * (k as f64).sqrt()) / sum.norm() + 4.0 * f64::EPSILON;
    Ok(SeriesParts { ln_prefactor, sum, rel_err, terms: k })
}

/// Ascending-series value of `J_{i nu}(y)` with its error estimate.
pub fn j_series(nu: f64, y: f64, budget: AccuracyBudget) -> Result<SeriesValue> {
    check_args(nu, y)?;
    let p = series_parts(nu, y, budget)?;
    Ok(SeriesValue { value: p.ln_prefactor.exp() * p.sum, rel_err: p.rel_err, terms: p.terms })
}

/// Large-argument expansion of `A_+ H^+_{i nu}(y)`, truncated at the smallest
/// term. The error estimate is the size of that term relative to the sum.
pub fn hankel_asymptotic(nu: f64, y: f64) -> SeriesValue {
    let four_nu2 = 4.0 * nu * nu;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = 1.0f64;
    let mut k = 1usize;
    let err;
    loop {
        let odd = (2 * k - 1) as f64;
        let factor = -(four_nu2 + odd * odd) / (8.0 * k as f64 * y);
        let next = term * Complex64::new(0.0, factor);
        let size = next.norm();
        if size >= last && (k as f64) > nu + 1.0 {
            err = last;
            break;
        }
        term = next;
        sum += term;
        last = size;
        if size <= 1e-17 * sum.norm() {
            err = size;
            break;
        }
        if k > 10_000 {
            err = size;
            break;
        }
        k += 1;
    }
    let phase = Complex64::from_polar((2.0 / (PI * y)).sqrt(), y - FRAC_PI_4);
    SeriesValue { value: phase * sum, rel_err: err / sum.norm() + 4.0 * f64::EPSILON, terms: k }
}

fn check_args(nu: f64, y: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("imaginary order needs nu > 0, got {nu}")));
    }
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("argument needs y > 0, got {y}")));
    }
    Ok(())
}

/// `A_+ H^+` from the ascending series:
/// `2 (J^ - e^{-pi nu} conj(J^)) / (1 - e^{-2 pi nu})`, with
/// `J^ = e^{-pi nu/2} J_{i nu}` formed in log space.
fn scaled_from_series(nu: f64, y: f64, budget: AccuracyBudget) -> Result<SeriesValue> {
    let p = series_parts(nu, y, budget)?;
    let jhat = (p.ln_prefactor - 0.5 * PI * nu).exp() * p.sum;
    let damp = (-PI * nu).exp();
    let value = 2.0 * (jhat - damp * jhat.conj()) / (-(-2.0 * PI * nu).exp_m1());
    // the subtraction loses about log10(1/nu) digits as nu -> 0
    let loss = if nu < 1.0 { 1.0 / (PI * nu) } else { 1.0 };
    Ok(SeriesValue { value, rel_err: p.rel_err * loss, terms: p.terms })
}

fn scaled_plus(nu: f64, y: f64, budget: AccuracyBudget) -> Result<SeriesValue> {
    check_args(nu, y)?;
    let asym = hankel_asymptotic(nu, y);
    if asym.rel_err <= budget.target_rel_err {
        return Ok(asym);
    }
    let best = if y <= SERIES_Y_MAX {
        let ser = scaled_from_series(nu, y, budget)?;
        if ser.rel_err < asym.rel_err {
            ser
        } else {
            asym
        }
    } else {
        asym
    };
    if best.rel_err <= budget.target_rel_err {
        Ok(best)
    } else {
        Err(Error::NonConvergence { what: "imaginary-order Hankel function", terms: best.terms })
    }
}

/// Scaled Hankel function `A_+- H^+-_{i nu}(y)` with `A_+- = e^{-+ pi nu/2}`.
pub fn scaled_hankel(sign: Sign, nu: f64, y: f64) -> Result<Complex64> {
    scaled_hankel_with(sign, nu, y, AccuracyBudget::default())
}

pub fn scaled_hankel_with(sign: Sign, nu: f64, y: f64, budget: AccuracyBudget) -> Result<Complex64> {
    let v = scaled_plus(nu, y, budget)?.value;
    Ok(match sign {
        Sign::Plus => v,
        Sign::Minus => v.conj(),
    })
}

/// Unscaled `H^+-_{i nu}(y)`; fails with [`Error::Overflow`] when
/// `e^{pi nu/2}` pushes the result out of range.
pub fn hankel_imag_order(sign: Sign, nu: f64, y: f64) -> Result<Complex64> {
    let scaled = scaled_hankel(sign, nu, y)?;
    let ln_mag = sign.factor() * 0.5 * PI * nu + scaled.norm().ln();
    if ln_mag > 700.0 || ln_mag < -700.0 {
        return Err(Error::Overflow("hankel_imag_order"));
    }
    Ok(scaled * (sign.factor() * 0.5 * PI * nu).exp())
}

/// `J_{i nu}(y)`; `J_{-i nu}(y)` is its complex conjugate.
pub fn bessel_imag_order(nu: f64, y: f64) -> Result<Complex64> {
    bessel_imag_order_with(nu, y, AccuracyBudget::default())
}

pub fn bessel_imag_order_with(nu: f64, y: f64, budget: AccuracyBudget) -> Result<Complex64> {
    check_args(nu, y)?;
    let asym = hankel_asymptotic(nu, y);
    if asym.rel_err <= budget.target_rel_err {
        // J = (H^+ + H^-) / 2
        let up = (0.5 * PI * nu).exp();
        return Ok(0.5 * (up * asym.value + asym.value.conj() / up));
    }
    let ser = j_series(nu, y, budget)?;
    if ser.rel_err <= budget.target_rel_err.max(1e-10) || y <= SERIES_Y_MAX {
        Ok(ser.value)
    } else {
        Err(Error::NonConvergence { what: "imaginary-order Bessel function", terms: ser.terms })
    }
}

/// Exact reference solution `chi_+-(r) = A_+- sqrt(kr) H^+-_{i nu}(kr)`.
pub fn chi_reference(sign: Sign, params: &PhysicalParams, r: f64) -> Result<Complex64> {
    let y = params.k() * r;
    Ok(scaled_hankel(sign, params.nu(), y)? * y.sqrt())
}
