//! Special functions of complex parameters: log-gamma, Bessel and Hankel
//! functions of purely imaginary order, hypergeometric series and associated
//! Legendre functions on `[0, 1]`.

mod bessel;
mod gamma;
mod hyper;
mod legendre;

pub use bessel::{
    bessel_imag_order, bessel_imag_order_with, chi_reference, hankel_asymptotic,
    hankel_imag_order, j_series, scaled_hankel, scaled_hankel_with, SeriesValue,
};
pub use gamma::{ln_gamma_complex, reciprocal_gamma};
pub use hyper::{hyp1f1, hyp1f1_with, hyp2f1, hyp2f1_with};
pub use legendre::{assoc_legendre_p, assoc_legendre_p_ln};

use crate::error::{Error, Result};

/// Target relative error and term cap for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBudget {
    pub target_rel_err: f64,
    pub max_terms: usize,
}

impl AccuracyBudget {
    pub fn new(target_rel_err: f64, max_terms: usize) -> Result<Self> {
        if !(target_rel_err > 0.0) || max_terms == 0 {
            return Err(Error::InvalidInput(format!(
                "accuracy budget needs target_rel_err > 0 and max_terms >= 1 (got {target_rel_err}, {max_terms})"
            )));
        }
        Ok(Self { target_rel_err, max_terms })
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self { target_rel_err: 1e-12, max_terms: 1_000_000 }
    }
}

/// Selects the outgoing (`Plus`) or incoming (`Minus`) solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

pub(crate) fn is_nonpositive_integer(z: num_complex::Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}
