use num_complex::Complex64;

use super::{hyp2f1_with, is_nonpositive_integer, ln_gamma_complex, AccuracyBudget};
use crate::error::{Error, Result};

/// Associated Legendre function of the first kind on `0 <= x <= 1`:
/// `P^lam_gam(x) = 2^lam / Gamma(1 - lam) (1 - x^2)^{-lam/2}
///  2F1((1 + gam - lam)/2, -(gam + lam)/2; 1 - lam; 1 - x^2)`.
pub fn assoc_legendre_p(lam: Complex64, gam: Complex64, x: f64) -> Result<Complex64> {
    Ok(assoc_legendre_p_ln(lam, gam, x, AccuracyBudget::default())?.exp())
}

/// Logarithm of [`assoc_legendre_p`] (any branch; only its exponential is
/// meaningful), for overflow-safe products.
pub fn assoc_legendre_p_ln(lam: Complex64, gam: Complex64, x: f64, budget: AccuracyBudget) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("assoc_legendre_p needs 0 <= x <= 1, got {x}")));
    }
    let one_minus_lam = 1.0 - lam;
    if is_nonpositive_integer(one_minus_lam) {
        return Err(Error::Pole { function: "assoc_legendre_p (Gamma(1 - lam))", at: format!("{lam}") });
    }
    let w = (1.0 - x) * (1.0 + x);
    let ln_w_part = if w == 0.0 {
        if lam.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else if lam.re < 0.0 {
            return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
        } else {
            return Err(Error::Domain(format!("(1 - x^2)^(-lam/2) undefined at x = 1 for lam = {lam}")));
        }
    } else {
        -0.5 * lam * w.ln()
    };
    let f = hyp2f1_with(0.5 * (1.0 + gam - lam), -0.5 * (gam + lam), one_minus_lam, w, budget)?;
    Ok(lam * std::f64::consts::LN_2 - ln_gamma_complex(one_minus_lam)? + ln_w_part + f.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn classical_polynomials() {
        for &x in &[0.0, 0.2, 0.7, 1.0] {
            assert!((assoc_legendre_p(c(0.0), c(0.0), x).unwrap() - 1.0).norm() < 1e-14);
            assert!((assoc_legendre_p(c(0.0), c(1.0), x).unwrap() - x).norm() < 1e-13);
            let p2 = 0.5 * (3.0 * x * x - 1.0);
            assert!((assoc_legendre_p(c(0.0), c(2.0), x).unwrap() - p2).norm() < 1e-13);
        }
    }

    #[test]
    fn conjugate_orders() {
        let nu = 3.0;
        let x = 1.0 / 17f64.sqrt();
        let p = assoc_legendre_p(Complex64::new(0.0, -nu), c(1.5), x).unwrap();
        let q = assoc_legendre_p(Complex64::new(0.0, nu), c(1.5), x).unwrap();
        assert!((p.conj() - q).norm() < 1e-12 * p.norm());
    }

    #[test]
    fn domain_checks() {
        assert!(assoc_legendre_p(c(0.0), c(1.0), 1.5).is_err());
        assert!(assoc_legendre_p(c(1.0), c(1.0), 0.5).is_err());
    }
}
