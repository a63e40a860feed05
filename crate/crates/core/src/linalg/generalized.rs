use super::{eig_sym_dense, normalize_signs, Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Lower Cholesky factor `L` with `a = L L^T`.
pub fn cholesky(a: &SymMatrix) -> Result<Matrix> {
    let n = a.order();
    let mut l = Matrix::zeros(n, n);
    let tol = f64::EPSILON * a.norm_max() * n as f64;
    for j in 0..n {
        let mut s = a.get(j, j);
        for k in 0..j {
            s -= l[(j, k)] * l[(j, k)];
        }
        if !(s > tol) {
            return Err(Error::NotPositiveDefinite { pivot: j, value: s });
        }
        let d = s.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut t = a.get(i, j);
            for k in 0..j {
                t -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = t / d;
        }
    }
    Ok(l)
}

/// Solution of `H g = eps Omega g` for symmetric `H` and positive definite
/// `Omega`.
///
/// Columns of `vectors` have unit Euclidean norm and follow the usual sign
/// convention. With that normalization `vectors^T Omega vectors = diag(tau)`
/// and `vectors^T H vectors = diag(eta)` with `eta = eps * tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub tau: Vec<f64>,
    pub eta: Vec<f64>,
}

pub fn eig_sym_generalized(h: &SymMatrix, omega: &SymMatrix) -> Result<GeneralizedEigen> {
    let n = h.order();
    if omega.order() != n {
        return Err(Error::InvalidInput("H and Omega orders differ".into()));
    }
    let l = cholesky(omega)?;
    // X = L^{-1} H, then C = L^{-1} X^T = L^{-1} H L^{-T}.
    let forward = |b: &dyn Fn(usize, usize) -> f64| {
        let mut x = Matrix::zeros(n, n);
        for c in 0..n {
            for i in 0..n {
                let mut s = b(i, c);
                for k in 0..i {
                    s -= l[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / l[(i, i)];
            }
        }
        x
    };
    let x = forward(&|i, c| h.get(i, c));
    let c = forward(&|i, col| x[(col, i)]);
    let cs = SymMatrix::from_fn(n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));
    let eig = eig_sym_dense(&cs)?;
    // G = L^{-T} Y.
    let mut g = Matrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = eig.vectors[(i, col)];
            for k in i + 1..n {
                s -= l[(k, i)] * g[(k, col)];
            }
            g[(i, col)] = s / l[(i, i)];
        }
    }
    let mut tau = Vec::with_capacity(n);
    for col in 0..n {
        let norm2: f64 = (0..n).map(|i| g[(i, col)] * g[(i, col)]).sum();
        let inv = 1.0 / norm2.sqrt();
        for i in 0..n {
            g[(i, col)] *= inv;
        }
        tau.push(inv * inv);
    }
    normalize_signs(&mut g);
    let eta = eig.values.iter().zip(&tau).map(|(e, t)| e * t).collect();
    Ok(GeneralizedEigen { values: eig.values, vectors: g, tau, eta })
}
