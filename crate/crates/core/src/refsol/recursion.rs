use num_complex::Complex64;
use num_traits::Float;

use super::{BasisFamily, BasisSpec, PhysicalParams};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// `(a_n, b_n, c_n)` in any float type; zero for `n < 0`.
pub(crate) fn coefficients_generic<T: Float>(family: BasisFamily, beta: T, mu2: T, nu2: T, n: i64) -> (T, T, T) {
    let zero = T::zero();
    if n < 0 {
        return (zero, zero, zero);
    }
    let one = T::one();
    let two = one + one;
    let quarter = one / (two * two);
    let nf = T::from(n).unwrap();
    let np1 = nf + one;
    let np2 = nf + two;
    let nb1 = nf + beta + one;
    let nb2 = nb1 + one;
    match family {
        BasisFamily::Laguerre => {
            let s = two * nf + beta + one;
            let a = nu2 + quarter * (beta * beta - one)
                + (mu2 - quarter) * s * s
                + (mu2 + quarter) * (two * nf * nb1 + beta + one);
            let b = -two * mu2 * (s + one) * (np1 * nb1).sqrt();
            let c = (mu2 + quarter) * (np1 * np2 * nb1 * nb2).sqrt();
            (a, b, c)
        }
        BasisFamily::Oscillator => {
            let a = nu2 + (beta + one) * (mu2 - one) - two * nf * (nb1 - mu2);
            let b = -mu2 * (np1 * nb1).sqrt();
            let c = (np1 * np2 * nb1 * nb2).sqrt();
            (a, b, c)
        }
    }
}

/// Five-term recursion coefficients `(a_n, b_n, c_n)`, with the boundary
/// convention that all of them vanish for `n < 0`.
pub fn recursion_coefficients(basis: &BasisSpec, params: &PhysicalParams, n: i64) -> (f64, f64, f64) {
    let mu = params.mu();
    let nu = params.nu();
    coefficients_generic(basis.family(), basis.beta(), mu * mu, nu * nu, n)
}

/// Symmetric penta-diagonal matrix `scale * [a_n on the diagonal, b_n on the
/// first and c_n on the second off-diagonals]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PentaDiagonalOperator {
    pub diag_a: Vec<f64>,
    pub off1_b: Vec<f64>,
    pub off2_c: Vec<f64>,
    pub scale: f64,
    pub size: usize,
}

impl PentaDiagonalOperator {
    fn build(size: usize, scale: f64, f: impl Fn(i64) -> (f64, f64, f64)) -> Self {
        let mut diag_a = Vec::with_capacity(size);
        let mut off1_b = Vec::with_capacity(size);
        let mut off2_c = Vec::with_capacity(size);
        for n in 0..size {
            let (a, b, c) = f(n as i64);
            diag_a.push(a);
            off1_b.push(b);
            off2_c.push(c);
        }
        Self { diag_a, off1_b, off2_c, scale, size }
    }

    /// Element `(n, m)` including the scale; zero outside the band.
    pub fn entry(&self, n: usize, m: usize) -> f64 {
        let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
        match hi - lo {
            0 => self.scale * self.diag_a[lo],
            1 => self.scale * self.off1_b[lo],
            2 => self.scale * self.off2_c[lo],
            _ => 0.0,
        }
    }

    /// Product with a complex vector of length `size`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.size;
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(2);
                let hi = (i + 2).min(n - 1);
                (lo..=hi).map(|j| v[j] * self.entry(i, j)).sum()
            })
            .collect()
    }

    pub fn to_sym(&self) -> SymMatrix {
        SymMatrix::from_fn(self.size, |i, j| self.entry(i, j))
    }
}

/// Matrix of the reference wave operator `<phi_n|(H0 - E)|phi_m>` in the
/// basis: `-(lambda^2/2) [a, b, c]`.
pub fn reference_jmatrix(basis: &BasisSpec, params: &PhysicalParams, size: usize) -> Result<PentaDiagonalOperator> {
    if size < 5 {
        return Err(Error::InvalidInput(format!("reference_jmatrix needs size >= 5, got {size}")));
    }
    let lam = params.lambda();
    Ok(PentaDiagonalOperator::build(size, -0.5 * lam * lam, |n| recursion_coefficients(basis, params, n)))
}

/// The energy-independent part `H0`: the wave-operator matrix at `k = 0`, so
/// that `reference_jmatrix = H0 - E * Omega`.
pub fn reference_hamiltonian(basis: &BasisSpec, params: &PhysicalParams, size: usize) -> PentaDiagonalOperator {
    let lam = params.lambda();
    let nu2 = params.nu() * params.nu();
    PentaDiagonalOperator::build(size, -0.5 * lam * lam, |n| {
        coefficients_generic(basis.family(), basis.beta(), 0.0, nu2, n)
    })
}

/// Basis overlap `Omega_{nm} = int phi_n phi_m dx`, the `mu^2` derivative of
/// the bracket: the square of the normalized-Laguerre Jacobi matrix for the
/// Laguerre basis (penta-diagonal) and the Jacobi matrix itself for the
/// oscillator basis (tridiagonal).
pub fn overlap_operator(basis: &BasisSpec, size: usize) -> PentaDiagonalOperator {
    let beta = basis.beta();
    let d = |n: f64| 2.0 * n + beta + 1.0;
    let e = |n: f64| -((n + 1.0) * (n + beta + 1.0)).sqrt();
    match basis.family() {
        BasisFamily::Laguerre => PentaDiagonalOperator::build(size, 1.0, |n| {
            let nf = n as f64;
            let em = if n == 0 { 0.0 } else { e(nf - 1.0) };
            (
                d(nf) * d(nf) + em * em + e(nf) * e(nf),
                e(nf) * (d(nf) + d(nf + 1.0)),
                e(nf) * e(nf + 1.0),
            )
        }),
        BasisFamily::Oscillator => {
            PentaDiagonalOperator::build(size, 1.0, |n| (d(n as f64), e(n as f64), 0.0))
        }
    }
}
