//! Finite Green's function `G(z) = (H - z Omega)^{-1}` of a symmetric pencil.
//!
//! Two evaluation routes are provided. The spectral sum uses the generalized
//! eigenvectors. The eigenvalue-only route writes each element as a ratio of
//! determinants,
//!
//! `G_nm(z) = (-1)^{n+m} det[(H - z Omega) without row n, column m] / det(H - z Omega)`,
//!
//! with `det(H - z Omega) = det(Omega) prod_j (eps_j - z)`. For `n == m` the
//! minor is a symmetric pencil and its determinant is
//! `det(Omega~) prod_i (eps~_i - z)`. For `n != m` the deleted overlap block
//! can be singular (always so when `Omega = I`), so the minor polynomial is
//! written as `det(A_s) prod_i (1 - (z - s) theta_i)` with
//! `A_s = H~ - s Omega~` and `theta` the eigenvalues of `A_s^{-1} Omega~`;
//! infinite pencil eigenvalues show up as `theta = 0` and drop out.

use crate::error::{Error, Result};
use crate::linalg::{eig_sym_dense, eig_sym_generalized, eigvals_general, GeneralizedEigen, Lu, Matrix, SymMatrix};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

/// Relative distance below which `z` counts as an eigenvalue.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Relative eigenvalue separation below which eigenvector products are
/// refused.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

#[derive(Debug)]
enum SubSpectrum {
    Principal { values: Vec<f64>, ln_det_overlap: f64 },
    Minor { shift: f64, det_sign: f64, ln_det: f64, theta: Vec<Complex64> },
    Vanishing,
}

#[derive(Debug)]
pub struct FiniteGreen {
    h: SymMatrix,
    omega: Option<SymMatrix>,
    eig: GeneralizedEigen,
    ln_det_overlap: f64,
    scale: f64,
    cache: Mutex<HashMap<(usize, usize), Arc<SubSpectrum>>>,
}

fn ln_det_spd(m: &SymMatrix) -> Result<f64> {
    if m.order() == 0 {
        return Ok(0.0);
    }
    let vals = eig_sym_dense(m)?.values;
    if vals[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite { pivot: 0, value: vals[0] });
    }
    Ok(vals.iter().map(|v| v.ln()).sum())
}

impl FiniteGreen {
    /// Orthogonal basis: `Omega = I`.
    pub fn orthogonal(h: SymMatrix) -> Result<Self> {
        let n = h.order();
        if n == 0 {
            return Err(Error::InvalidInput("empty Hamiltonian matrix".into()));
        }
        let e = eig_sym_dense(&h)?;
        let eig = GeneralizedEigen { eta: e.values.clone(), tau: vec![1.0; n], values: e.values, vectors: e.vectors };
        Ok(Self::from_parts(h, None, eig, 0.0))
    }

    /// Non-orthogonal basis with positive definite overlap `omega`.
    pub fn generalized(h: SymMatrix, omega: SymMatrix) -> Result<Self> {
        if h.order() == 0 || h.order() != omega.order() {
            return Err(Error::InvalidInput("H and Omega must be non-empty and of equal order".into()));
        }
        let eig = eig_sym_generalized(&h, &omega)?;
        let ln_det = ln_det_spd(&omega)?;
        Ok(Self::from_parts(h, Some(omega), eig, ln_det))
    }

    fn from_parts(h: SymMatrix, omega: Option<SymMatrix>, eig: GeneralizedEigen, ln_det_overlap: f64) -> Self {
        let spread = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let scale = spread.max(h.norm_max()).max(f64::MIN_POSITIVE);
        Self { h, omega, eig, ln_det_overlap, scale, cache: Mutex::new(HashMap::new()) }
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn hamiltonian(&self) -> &SymMatrix {
        &self.h
    }

    pub fn overlap(&self) -> Option<&SymMatrix> {
        self.omega.as_ref()
    }

    pub fn eigen(&self) -> &GeneralizedEigen {
        &self.eig
    }

    /// Ascending generalized eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    fn overlap_entry(&self, i: usize, j: usize) -> f64 {
        match &self.omega {
            Some(o) => o.get(i, j),
            None => f64::from(u8::from(i == j)),
        }
    }

    fn check_index(&self, n: usize, m: usize) -> Result<()> {
        let len = self.order();
        if n >= len || m >= len {
            return Err(Error::InvalidInput(format!("index ({n}, {m}) outside order {len}")));
        }
        Ok(())
    }

    fn check_pole(&self, z: f64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite energy {z}")));
        }
        if self.eig.values.iter().any(|&e| (e - z).abs() <= POLE_TOLERANCE * self.scale) {
            return Err(Error::SpectrumPole { energy: z });
        }
        Ok(())
    }

    /// Spectral-sum value `sum_i Gamma_ni Gamma_mi / (eta_i - z tau_i)`.
    pub fn element(&self, n: usize, m: usize, z: f64) -> Result<f64> {
        self.check_index(n, m)?;
        self.check_pole(z)?;
        let g = &self.eig.vectors;
        Ok((0..self.order())
            .map(|i| g[(n, i)] * g[(m, i)] / (self.eig.eta[i] - z * self.eig.tau[i]))
            .sum())
    }

    /// The full matrix `G(z)` by the spectral sum.
    pub fn matrix(&self, z: f64) -> Result<Matrix> {
        self.check_pole(z)?;
        let n = self.order();
        let g = &self.eig.vectors;
        let d: Vec<f64> = (0..n).map(|i| 1.0 / (self.eig.eta[i] - z * self.eig.tau[i])).collect();
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..=r {
                let v: f64 = (0..n).map(|i| g[(r, i)] * g[(c, i)] * d[i]).sum();
                out[(r, c)] = v;
                out[(c, r)] = v;
            }
        }
        Ok(out)
    }

    /// `G(z) v` by the spectral sum, for complex `v`.
    pub fn apply(&self, v: &[Complex64], z: f64) -> Result<Vec<Complex64>> {
        self.check_pole(z)?;
        let n = self.order();
        if v.len() != n {
            return Err(Error::InvalidInput("vector length differs from matrix order".into()));
        }
        let g = &self.eig.vectors;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let proj: Complex64 = (0..n).map(|r| v[r] * g[(r, i)]).sum::<Complex64>() / (self.eig.eta[i] - z * self.eig.tau[i]);
            for (r, o) in out.iter_mut().enumerate() {
                *o += proj * g[(r, i)];
            }
        }
        Ok(out)
    }

    fn sub_spectrum(&self, n: usize, m: usize) -> Result<Arc<SubSpectrum>> {
        let key = (n.min(m), n.max(m));
        if let Some(s) = self.cache.lock().map_err(|_| Error::EigenIteration)?.get(&key) {
            return Ok(s.clone());
        }
        let computed = Arc::new(self.compute_sub_spectrum(key.0, key.1)?);
        let mut guard = self.cache.lock().map_err(|_| Error::EigenIteration)?;
        Ok(guard.entry(key).or_insert(computed).clone())
    }

    fn compute_sub_spectrum(&self, n: usize, m: usize) -> Result<SubSpectrum> {
        let len = self.order();
        if n == m {
            let h = self.h.without(n);
            if h.order() == 0 {
                return Ok(SubSpectrum::Principal { values: Vec::new(), ln_det_overlap: 0.0 });
            }
            return match &self.omega {
                None => Ok(SubSpectrum::Principal { values: eig_sym_dense(&h)?.values, ln_det_overlap: 0.0 }),
                Some(o) => {
                    let os = o.without(n);
                    Ok(SubSpectrum::Principal {
                        values: eig_sym_generalized(&h, &os)?.values,
                        ln_det_overlap: ln_det_spd(&os)?,
                    })
                }
            };
        }
        let rows: Vec<usize> = (0..len).filter(|&k| k != n).collect();
        let cols: Vec<usize> = (0..len).filter(|&k| k != m).collect();
        let b = Matrix::from_fn(len - 1, len - 1, |i, j| self.overlap_entry(rows[i], cols[j]));
        // Try a few shifts and keep the best-conditioned factorization. When
        // every shifted minor is exactly singular the polynomial vanishes
        // identically.
        let shifts = [0.0, 0.3137, -0.2718, 0.7093, -0.5791, 1.4183];
        let mut best: Option<(f64, f64, Lu)> = None;
        for s in shifts.iter().map(|f| f * self.scale) {
            let a = Matrix::from_fn(len - 1, len - 1, |i, j| self.h.get(rows[i], cols[j]) - s * b[(i, j)]);
            if let Ok(lu) = Lu::new(&a) {
                let cond = lu.condition_estimate();
                if best.as_ref().is_none_or(|(c, _, _)| cond < *c) {
                    best = Some((cond, s, lu));
                }
                if cond < 1e8 {
                    break;
                }
            }
        }
        if let Some((_, s, lu)) = best {
            let mut mm = Matrix::zeros(len - 1, len - 1);
            for c in 0..len - 1 {
                let x = lu.solve(&b.column(c));
                for (r, v) in x.into_iter().enumerate() {
                    mm[(r, c)] = v;
                }
            }
            let theta = eigvals_general(&mm)?;
            let (det_sign, ln_det) = lu.ln_det();
            return Ok(SubSpectrum::Minor { shift: s, det_sign, ln_det, theta });
        }
        Ok(SubSpectrum::Vanishing)
    }

    /// Complex log of `(-1)^{n+m} det[minor_{nm}(H - z Omega)] / det(Omega)`.
    fn ln_cofactor(&self, n: usize, m: usize, z: f64) -> Result<Complex64> {
        let sub = self.sub_spectrum(n, m)?;
        let parity = if (n + m) % 2 == 1 { Complex64::new(0.0, PI) } else { Complex64::new(0.0, 0.0) };
        let body = match sub.as_ref() {
            SubSpectrum::Principal { values, ln_det_overlap } => {
                values.iter().map(|&e| Complex64::new(e - z, 0.0).ln()).sum::<Complex64>() + ln_det_overlap
            }
            SubSpectrum::Minor { shift, det_sign, ln_det, theta } => {
                let sign = if *det_sign < 0.0 { Complex64::new(0.0, PI) } else { Complex64::new(0.0, 0.0) };
                theta.iter().map(|t| (1.0 - (z - shift) * t).ln()).sum::<Complex64>() + sign + ln_det
            }
            SubSpectrum::Vanishing => Complex64::new(f64::NEG_INFINITY, 0.0),
        };
        Ok(parity + body - self.ln_det_overlap)
    }

    /// Eigenvalue-only evaluation of `G_nm(z)`.
    pub fn element_eigenvalue_only(&self, n: usize, m: usize, z: f64) -> Result<f64> {
        self.check_index(n, m)?;
        self.check_pole(z)?;
        let num = self.ln_cofactor(n, m, z)?;
        let den: Complex64 = self.eig.values.iter().map(|&e| Complex64::new(e - z, 0.0).ln()).sum();
        Ok((num - den).exp().re)
    }

    /// `Gamma_nk Gamma_mk` from eigenvalues, as the residue of `G_nm` at
    /// `eps_k` times `tau_k`. Columns of `Gamma` have unit Euclidean norm.
    pub fn eigenvector_products(&self, n: usize, m: usize, k: usize) -> Result<f64> {
        self.check_index(n, m)?;
        if k >= self.order() {
            return Err(Error::InvalidInput(format!("eigenvalue index {k} outside order {}", self.order())));
        }
        let vals = &self.eig.values;
        let ek = vals[k];
        let mut den = Complex64::new(0.0, 0.0);
        for (j, &ej) in vals.iter().enumerate() {
            if j == k {
                continue;
            }
            if (ej - ek).abs() < DEGENERACY_TOLERANCE * self.scale {
                return Err(Error::Degenerate(ej, ek));
            }
            den += Complex64::new(ej - ek, 0.0).ln();
        }
        let num = self.ln_cofactor(n, m, ek)?;
        Ok(self.eig.tau[k] * (num - den).exp().re)
    }
}
