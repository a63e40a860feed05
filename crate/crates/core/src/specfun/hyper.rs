use num_complex::Complex64;

use super::{is_nonpositive_integer, ln_gamma_complex, reciprocal_gamma, AccuracyBudget};
use crate::error::{Error, Result};

/// Above this argument the Gauss series is replaced by the `z -> 1 - z`
/// connection formula (when `c - a - b` is not an integer).
const CONNECTION_THRESHOLD: f64 = 0.6;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Plain Gauss series `sum (a)_k (b)_k / ((c)_k k!) z^k`.
fn gauss_series(a: Complex64, b: Complex64, cc: Complex64, z: f64, budget: AccuracyBudget) -> Result<Complex64> {
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut quiet = 0;
    for k in 0..budget.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((cc + kf) * (kf + 1.0)) * z;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        sum += term;
        // geometric bound on the remaining tail; the term ratio tends to z
        let ratio = (((a + kf + 1.0) * (b + kf + 1.0) / ((cc + kf + 1.0) * (kf + 2.0))).norm() * z).max(z);
        if ratio < 1.0 && term.norm() * ratio / (1.0 - ratio) <= budget.target_rel_err * 1e-2 * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "hyp2f1 series", terms: budget.max_terms })
}

/// `2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b))` for `Re(c-a-b) > 0`.
fn gauss_sum(a: Complex64, b: Complex64, cc: Complex64) -> Result<Complex64> {
    let s = cc - a - b;
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("hyp2f1 diverges at z = 1 for Re(c - a - b) = {}", s.re)));
    }
    Ok((ln_gamma_complex(cc)? + ln_gamma_complex(s)?).exp() * reciprocal_gamma(cc - a) * reciprocal_gamma(cc - b))
}

fn is_integer(x: Complex64) -> bool {
    x.im == 0.0 && x.re == x.re.round()
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real `0 <= z <= 1`.
pub fn hyp2f1(a: Complex64, b: Complex64, cc: Complex64, z: f64) -> Result<Complex64> {
    hyp2f1_with(a, b, cc, z, AccuracyBudget::default())
}

pub fn hyp2f1_with(a: Complex64, b: Complex64, cc: Complex64, z: f64, budget: AccuracyBudget) -> Result<Complex64> {
    if is_nonpositive_integer(cc) {
        return Err(Error::Pole { function: "hyp2f1 (c)", at: format!("{cc}") });
    }
    if z == 1.0 {
        return gauss_sum(a, b, cc);
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("hyp2f1 needs 0 <= z <= 1, got {z}")));
    }
    if z == 0.0 || a.norm() == 0.0 || b.norm() == 0.0 {
        return Ok(c(1.0));
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let s = cc - a - b;
    if terminating || z <= CONNECTION_THRESHOLD || is_integer(s) {
        return gauss_series(a, b, cc, z, budget);
    }
    // 2F1(a,b;c;z) = G(c)G(s)/(G(c-a)G(c-b)) 2F1(a,b;1-s;1-z)
    //              + (1-z)^s G(c)G(-s)/(G(a)G(b)) 2F1(c-a,c-b;1+s;1-z)
    let w = 1.0 - z;
    let lg_c = ln_gamma_complex(cc)?;
    let f1 = gauss_series(a, b, 1.0 - s, w, budget)?;
    let f2 = gauss_series(cc - a, cc - b, 1.0 + s, w, budget)?;
    let k1 = (lg_c + ln_gamma_complex(s)?).exp() * reciprocal_gamma(cc - a) * reciprocal_gamma(cc - b);
    let k2 = (lg_c + ln_gamma_complex(-s)? + s * w.ln()).exp() * reciprocal_gamma(a) * reciprocal_gamma(b);
    Ok(k1 * f1 + k2 * f2)
}

fn kummer_series(a: Complex64, cc: Complex64, z: f64, budget: AccuracyBudget) -> Result<Complex64> {
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut quiet = 0;
    for k in 0..budget.max_terms {
        let kf = k as f64;
        term *= (a + kf) / ((cc + kf) * (kf + 1.0)) * z;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        sum += term;
        let ratio = ((a + kf + 1.0) / ((cc + kf + 1.0) * (kf + 2.0))).norm() * z.abs();
        if ratio < 1.0 && term.norm() * ratio / (1.0 - ratio) <= budget.target_rel_err * 1e-2 * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "hyp1f1 series", terms: budget.max_terms })
}

/// Confluent hypergeometric function `1F1(a; c; z)` for real `z`. Negative
/// arguments use `1F1(a; c; z) = e^z 1F1(c - a; c; -z)` unless the series
/// terminates.
pub fn hyp1f1(a: Complex64, cc: Complex64, z: f64) -> Result<Complex64> {
    hyp1f1_with(a, cc, z, AccuracyBudget::default())
}

pub fn hyp1f1_with(a: Complex64, cc: Complex64, z: f64, budget: AccuracyBudget) -> Result<Complex64> {
    if is_nonpositive_integer(cc) {
        return Err(Error::Pole { function: "hyp1f1 (c)", at: format!("{cc}") });
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("hyp1f1 needs finite z, got {z}")));
    }
    if z == 0.0 {
        return Ok(c(1.0));
    }
    if z < 0.0 && !is_nonpositive_integer(a) {
        return Ok(kummer_series(cc - a, cc, -z, budget)? * z.exp());
    }
    kummer_series(a, cc, z, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_closed_form() {
        for &z in &[0.1, 0.5, 0.7, 0.95, 0.999] {
            let v = hyp2f1(c(1.0), c(1.0), c(2.0), z).unwrap();
            let exact = -(1.0 - z).ln() / z;
            assert!((v.re - exact).abs() < 1e-12 * exact, "z = {z}: {v}");
        }
    }

    #[test]
    fn power_closed_form_through_connection() {
        // 2F1(a, b; a; z) = (1 - z)^{-b}
        let a = Complex64::new(0.3, 1.1);
        let b = Complex64::new(-0.4, 0.7);
        for &z in &[0.3, 0.8, 0.97] {
            let v = hyp2f1(a, b, a, z).unwrap();
            let exact = (-b * (1.0 - z).ln()).exp();
            assert!((v - exact).norm() < 1e-11 * exact.norm(), "z = {z}");
        }
    }

    #[test]
    fn kummer_exponential() {
        let v = hyp1f1(c(1.0), c(1.0), 1.7).unwrap();
        assert!((v.re - 1.7f64.exp()).abs() < 1e-13 * 1.7f64.exp());
        let v = hyp1f1(c(1.0), c(1.0), -1.7).unwrap();
        assert!((v.re - (-1.7f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn poles_reported() {
        assert!(hyp2f1(c(1.0), c(1.0), c(-2.0), 0.3).is_err());
        assert!(hyp1f1(c(1.0), c(0.0), 0.3).is_err());
        assert!(hyp2f1(c(1.0), c(1.0), c(2.0), 1.0).is_err());
    }
}
