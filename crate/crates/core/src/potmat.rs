//! Gauss quadrature for the basis measures and potential-matrix elements.
//!
//! Both basis families are built on Laguerre polynomials `L_n^beta(t)`, with
//! `t = x = lambda r` for the Laguerre basis and `t = y = x^2` for the
//! oscillator basis. The rules here are for the normalized weight
//! `rho(t) = t^beta e^{-t} / Gamma(beta + 1)`.
//!
//! The product of two basis functions carries a higher power of `t` than the
//! Laguerre measure:
//!
//! * Laguerre: `phi_n phi_m dx = t^2 * [t^beta e^{-t}] psi_n psi_m dt`
//! * oscillator: `phi_n phi_m dx = t * [t^beta e^{-t}] psi_n psi_m dt`
//!
//! The surplus power is moved into the integrand, so the matrix element of
//! `U` is `(Lambda F Lambda^T)_{nm}` with `F = diag(f(eps_k))` and
//! `f(t) = t^2 U(t / lambda)` or `f(t) = t U(sqrt(t) / lambda)`. A constant
//! potential `c` therefore gives `c` times the basis overlap matrix.

use crate::error::{Error, Result};
use crate::linalg::{eigvals_sym_tridiagonal, tridiagonal_first_components, SymMatrix};
use crate::refsol::{BasisFamily, BasisSpec};
use crate::specfun::ln_gamma_complex;
use num_complex::Complex64;

/// Symmetric tridiagonal matrix stored by bands.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl Tridiagonal {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_sym(&self) -> SymMatrix {
        SymMatrix::from_fn(self.order(), |i, j| {
            if i == j {
                self.diag[i]
            } else if i == j + 1 {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }

    /// The matrix with its first row and column removed.
    pub fn trailing(&self) -> Tridiagonal {
        Tridiagonal { diag: self.diag[1..].to_vec(), offdiag: self.offdiag.get(1..).unwrap_or(&[]).to_vec() }
    }
}

/// Jacobi matrix of the orthonormal Laguerre polynomials for the basis
/// parameter `beta`; identical for both families in their own polynomial
/// variable.
pub fn jacobi_matrix(basis: &BasisSpec, order: usize) -> Result<Tridiagonal> {
    if order == 0 {
        return Err(Error::InvalidInput("quadrature order must be at least 1".into()));
    }
    let beta = basis.beta();
    Ok(Tridiagonal {
        diag: (0..order).map(|n| 2.0 * n as f64 + beta + 1.0).collect(),
        offdiag: (0..order - 1).map(|n| -(((n + 1) as f64) * (n as f64 + beta + 1.0)).sqrt()).collect(),
    })
}

/// Gauss rule for the normalized measure.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Nodes are the eigenvalues of `j`; weights are the squared first
/// components of the normalized eigenvectors.
pub fn nodes_and_weights(j: &Tridiagonal) -> Result<QuadratureRule> {
    if j.offdiag.iter().any(|&e| e == 0.0) {
        return Err(Error::InvalidInput("Jacobi matrix has a vanishing off-diagonal".into()));
    }
    let (nodes, first) = tridiagonal_first_components(&j.diag, &j.offdiag)?;
    Ok(QuadratureRule { nodes, weights: first.iter().map(|v| v * v).collect() })
}

/// Eigenvalues of `j` with its first row and column deleted.
pub fn sub_spectrum(j: &Tridiagonal) -> Result<Vec<f64>> {
    if j.order() < 2 {
        return Ok(Vec::new());
    }
    let t = j.trailing();
    eigvals_sym_tridiagonal(&t.diag, &t.offdiag)
}

/// Weights from eigenvalues alone:
/// `w_k = prod_m (eps_k - sub_m) / prod_{j != k} (eps_k - eps_j)`.
pub fn weights_from_eigenvalues(nodes: &[f64], sub: &[f64]) -> Result<Vec<f64>> {
    if sub.len() + 1 != nodes.len() {
        return Err(Error::InvalidInput("sub-spectrum must have one fewer value than the spectrum".into()));
    }
    let mut out = Vec::with_capacity(nodes.len());
    for (k, &ek) in nodes.iter().enumerate() {
        // Interleave factors so the running product stays near unity.
        let mut w = 1.0;
        let mut others = nodes.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &ej)| ek - ej);
        for &s in sub {
            w *= ek - s;
            let d = others.next().unwrap_or(1.0);
            if d == 0.0 {
                return Err(Error::Degenerate(ek, ek));
            }
            w /= d;
        }
        out.push(w);
    }
    Ok(out)
}

/// How the weights enter [`quadrature_integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightMode {
    /// `sum_k w_k f(eps_k)`, approximating `int rho f`.
    WithWeight,
    /// `sum_k (w_k / rho(eps_k)) f(eps_k)`, approximating `int f`.
    DerivativeWeight { beta: f64 },
}

pub fn quadrature_integrate(rule: &QuadratureRule, f: impl Fn(f64) -> f64, mode: WeightMode) -> f64 {
    match mode {
        WeightMode::WithWeight => rule.nodes.iter().zip(&rule.weights).map(|(&t, &w)| w * f(t)).sum(),
        WeightMode::DerivativeWeight { beta } => {
            let lg = ln_gamma_complex(Complex64::new(beta + 1.0, 0.0)).map(|z| z.re).unwrap_or(f64::NAN);
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&t, &w)| w * (lg + t - beta * t.ln()).exp() * f(t))
                .sum()
        }
    }
}

/// Short-range potential `U(r)`, finite for `r >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialModel {
    /// `v0 exp(-r / range)`
    Exponential { v0: f64, range: f64 },
    /// `v0 exp(-(r / range)^2)`
    Gaussian { v0: f64, range: f64 },
    /// `v0 / cosh^2(r / range)`
    PoschlTellerCosh { v0: f64, range: f64 },
    /// Piecewise-linear through `(r_i, u_i)`, constant below the first point
    /// and zero beyond the last.
    Tabulated { r: Vec<f64>, u: Vec<f64> },
}

impl PotentialModel {
    pub fn zero() -> Self {
        PotentialModel::Exponential { v0: 0.0, range: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialModel::Exponential { v0, range }
            | PotentialModel::Gaussian { v0, range }
            | PotentialModel::PoschlTellerCosh { v0, range } => {
                if !v0.is_finite() {
                    return Err(Error::InvalidInput(format!("potential strength must be finite (got {v0})")));
                }
                if !(range.is_finite() && *range > 0.0) {
                    return Err(Error::InvalidInput(format!("potential range must be positive (got {range})")));
                }
            }
            PotentialModel::Tabulated { r, u } => {
                if r.len() < 2 || r.len() != u.len() {
                    return Err(Error::InvalidInput("tabulated potential needs >= 2 points and matching r/u lengths".into()));
                }
                if r[0] < 0.0 || r.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::InvalidInput("tabulated r must be non-negative and strictly increasing".into()));
                }
                if r.iter().chain(u).any(|v| !v.is_finite()) {
                    return Err(Error::InvalidInput("tabulated potential has non-finite entries".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PotentialModel::Exponential { v0, .. }
            | PotentialModel::Gaussian { v0, .. }
            | PotentialModel::PoschlTellerCosh { v0, .. } => *v0 == 0.0,
            PotentialModel::Tabulated { u, .. } => u.iter().all(|&v| v == 0.0),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            PotentialModel::Exponential { v0, range } => v0 * (-r / range).exp(),
            PotentialModel::Gaussian { v0, range } => v0 * (-(r / range).powi(2)).exp(),
            PotentialModel::PoschlTellerCosh { v0, range } => {
                let s = r / range;
                // 1/cosh^2 s = 4 e^{-2s} / (1 + e^{-2s})^2, safe for large s.
                let e = (-2.0 * s.abs()).exp();
                v0 * 4.0 * e / ((1.0 + e) * (1.0 + e))
            }
            PotentialModel::Tabulated { r: rs, u } => {
                let last = rs.len() - 1;
                if r > rs[last] {
                    return 0.0;
                }
                if r <= rs[0] {
                    return u[0];
                }
                let i = rs.partition_point(|&x| x <= r).min(last).max(1);
                let (r0, r1) = (rs[i - 1], rs[i]);
                let w = (r - r0) / (r1 - r0);
                u[i - 1] * (1.0 - w) + u[i] * w
            }
        }
    }
}

/// Default number of quadrature nodes used for a matrix of order `size`.
pub fn default_quadrature_order(size: usize) -> usize {
    (2 * size).max(size + 32)
}

/// `(Lambda F Lambda^T)` restricted to the leading `size x size` block, for
/// the Gauss rule of order `order` and node function `f`.
///
/// Eigenvector columns are generated from the orthonormal-polynomial
/// recursion at each node and normalized over all `order` components, which
/// avoids forming the full eigenvector matrix.
pub fn function_matrix(basis: &BasisSpec, size: usize, order: usize, f: impl Fn(f64) -> f64) -> Result<SymMatrix> {
    if size == 0 {
        return Err(Error::InvalidInput("matrix size must be at least 1".into()));
    }
    if order < size {
        return Err(Error::InvalidInput(format!("quadrature order {order} is below matrix size {size}")));
    }
    let j = jacobi_matrix(basis, order)?;
    let nodes = eigvals_sym_tridiagonal(&j.diag, &j.offdiag)?;
    let values: Vec<f64> = nodes.iter().map(|&t| f(t)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("potential is not finite at a quadrature node".into()));
    }
    let fmax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = SymMatrix::zeros(size);
    if fmax == 0.0 {
        return Ok(out);
    }
    let beta = basis.beta();
    let mut col = vec![0.0; order];
    for (&t, &fv) in nodes.iter().zip(&values) {
        if fv.abs() <= 1e-18 * fmax {
            continue;
        }
        eigen_column(beta, t, &mut col);
        for n in 0..size {
            let a = col[n] * fv;
            if a == 0.0 {
                continue;
            }
            for m in 0..=n {
                out.add_to(n, m, a * col[m]);
            }
        }
    }
    Ok(out)
}

/// Normalized eigenvector of the Jacobi matrix at eigenvalue `t`.
fn eigen_column(beta: f64, t: f64, col: &mut [f64]) {
    const BIG: f64 = 1e150;
    let len = col.len();
    col[0] = 1.0;
    if len > 1 {
        col[1] = (beta + 1.0 - t) / (beta + 1.0).sqrt();
    }
    for n in 1..len - 1 {
        let nf = n as f64;
        let next =
            ((2.0 * nf + beta + 1.0 - t) * col[n] - (nf * (nf + beta)).sqrt() * col[n - 1]) / ((nf + 1.0) * (nf + beta + 1.0)).sqrt();
        col[n + 1] = next;
        if next.abs() > BIG {
            for v in col[..=n + 1].iter_mut() {
                *v /= BIG;
            }
        }
    }
    let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in col.iter_mut() {
        *v /= norm;
    }
}

/// Matrix elements of `U` between the first `size` basis functions with the
/// default quadrature order.
pub fn potential_matrix(basis: &BasisSpec, model: &PotentialModel, lambda: f64, size: usize) -> Result<SymMatrix> {
    potential_matrix_with(basis, model, lambda, size, default_quadrature_order(size))
}

pub fn potential_matrix_with(
    basis: &BasisSpec,
    model: &PotentialModel,
    lambda: f64,
    size: usize,
    order: usize,
) -> Result<SymMatrix> {
    model.validate()?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidInput(format!("lambda must be positive (got {lambda})")));
    }
    if model.is_zero() {
        return Ok(SymMatrix::zeros(size));
    }
    match basis.family() {
        BasisFamily::Laguerre => function_matrix(basis, size, order, |t| t * t * model.eval(t / lambda)),
        BasisFamily::Oscillator => function_matrix(basis, size, order, |t| t * model.eval(t.sqrt() / lambda)),
    }
}

/// Norm of the last column relative to the Frobenius norm; a small value
/// means the potential is negligible at the truncation edge.
pub fn tail_ratio(u: &SymMatrix) -> f64 {
    let n = u.order();
    if n == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += u.get(i, j).powi(2);
        }
    }
    if total == 0.0 {
        return 0.0;
    }
    let last: f64 = (0..n).map(|i| u.get(i, n - 1).powi(2)).sum();
    (last / total).sqrt()
}

/// Threshold applied to [`tail_ratio`].
pub const TAIL_TOLERANCE: f64 = 1e-8;
