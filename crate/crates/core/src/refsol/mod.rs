//! The reference problem `H0 = -1/2 d^2/dr^2 + (l(l+1) - A)/(2 r^2)` in the
//! supercritical regime, expanded in Laguerre or oscillator bases.

mod basis;
mod closed_form;
mod expand;
mod recursion;

pub use basis::{basis_eval, basis_eval_all, exact_reference, reconstruct_partial_sums, reconstruct_reference};
pub use closed_form::{
    closed_form_integral, closed_form_integral_ln, coefficients_by_series, initial_coefficients,
    InitialCoefficients,
};
pub use expand::{
    expand_coefficients, expand_coefficients_with, five_term_residual, ExpansionCoefficients, Method,
    Precision,
};
pub use recursion::{
    overlap_operator, recursion_coefficients, reference_hamiltonian, reference_jmatrix,
    PentaDiagonalOperator,
};
pub(crate) use recursion::coefficients_generic;

use crate::error::{Error, Result};

/// `nu = sqrt(A - (l + 1/2)^2)`; errors outside the supercritical regime.
pub fn effective_nu(ell: u32, strength: f64) -> Result<f64> {
    let h = ell as f64 + 0.5;
    let d = strength - h * h;
    if !(d > 0.0) || !strength.is_finite() {
        return Err(Error::Regime { ell, strength });
    }
    Ok(d.sqrt())
}

/// Angular momentum, coupling, wavenumber and basis scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    ell: u32,
    strength: f64,
    k: f64,
    lambda: f64,
    nu: f64,
}

impl PhysicalParams {
    pub fn new(ell: u32, strength: f64, k: f64, lambda: f64) -> Result<Self> {
        let nu = effective_nu(ell, strength)?;
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidInput(format!("wavenumber must be positive, got {k}")));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidInput(format!("basis scale must be positive, got {lambda}")));
        }
        Ok(Self { ell, strength, k, lambda, nu })
    }

    /// `l = 0`, `A = nu^2 + 1/4`, `k = mu lambda`.
    pub fn from_mu_nu(mu: f64, nu: f64, lambda: f64) -> Result<Self> {
        Self::new(0, nu * nu + 0.25, mu * lambda, lambda)
    }

    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(self.ell, self.strength, k, self.lambda)
    }

    /// Same coupling and scale at energy `E = k^2 / 2`.
    pub fn with_energy(&self, energy: f64) -> Result<Self> {
        if !(energy > 0.0) {
            return Err(Error::InvalidInput(format!("energy must be positive, got {energy}")));
        }
        self.with_k((2.0 * energy).sqrt())
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn strength(&self) -> f64 {
        self.strength
    }
    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn mu(&self) -> f64 {
        self.k / self.lambda
    }
    pub fn energy(&self) -> f64 {
        0.5 * self.k * self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    /// `phi_n(x) = sqrt(n!/Gamma(n+beta+1)) e^{-x/2} x^alpha L_n^beta(x)`, `2 alpha = beta + 2`.
    Laguerre,
    /// `phi_n(x) = sqrt(2 n!/Gamma(n+beta+1)) e^{-x^2/2} x^alpha L_n^beta(x^2)`, `alpha = beta + 3/2`.
    Oscillator,
}

impl std::fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BasisFamily::Laguerre => "laguerre",
            BasisFamily::Oscillator => "oscillator",
        })
    }
}

/// Basis family and its parameter `beta > -1`; `alpha` is fixed by the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    family: BasisFamily,
    beta: f64,
}

impl BasisSpec {
    pub fn new(family: BasisFamily, beta: f64) -> Result<Self> {
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(Error::InvalidInput(format!("basis parameter beta must exceed -1, got {beta}")));
        }
        Ok(Self { family, beta })
    }
    pub fn laguerre(beta: f64) -> Result<Self> {
        Self::new(BasisFamily::Laguerre, beta)
    }
    pub fn oscillator(beta: f64) -> Result<Self> {
        Self::new(BasisFamily::Oscillator, beta)
    }
    pub fn family(&self) -> BasisFamily {
        self.family
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn alpha(&self) -> f64 {
        match self.family {
            BasisFamily::Laguerre => 0.5 * (self.beta + 2.0),
            BasisFamily::Oscillator => self.beta + 1.5,
        }
    }
}
