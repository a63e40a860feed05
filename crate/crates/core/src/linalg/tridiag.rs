use super::{finish, EigenDecomposition, Matrix};
use crate::error::{Error, Result};

const MAX_SWEEPS_PER_VALUE: usize = 60;

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[i]` couples `i` and `i + 1` (with `e[n-1]`
/// ignored). On return `d` holds the (unsorted) eigenvalues. Rotations are
/// accumulated into the columns of `z` when given; `z` may carry any number
/// of rows, so tracking only the first row yields the first eigenvector
/// components.
pub(crate) fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Matrix>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS_PER_VALUE {
                    return Err(Error::EigenIteration);
                }
                let g0 = d[l];
                let mut p = (d[l + 1] - g0) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g0 - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(zm) = z.as_deref_mut() {
                        for k in 0..zm.rows() {
                            let hk = zm[(k, i + 1)];
                            zm[(k, i + 1)] = s * zm[(k, i)] + c * hk;
                            zm[(k, i)] = c * zm[(k, i)] - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn check(diag: &[f64], offdiag: &[f64]) -> Result<()> {
    if diag.is_empty() || offdiag.len() + 1 != diag.len() {
        return Err(Error::InvalidInput(format!(
            "tridiagonal input needs n >= 1 diagonal and n - 1 off-diagonal entries (got {} and {})",
            diag.len(),
            offdiag.len()
        )));
    }
    if diag.iter().chain(offdiag).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite tridiagonal entry".into()));
    }
    Ok(())
}

/// Full eigen-decomposition of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal.
pub fn eig_sym_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Result<EigenDecomposition> {
    check(diag, offdiag)?;
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = Matrix::identity(n);
    tql(&mut d, &mut e, Some(&mut z))?;
    finish(&mut d, &mut z);
    Ok(EigenDecomposition { values: d, vectors: z })
}

/// Ascending eigenvalues only.
pub fn eigvals_sym_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    check(diag, offdiag)?;
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    tql(&mut d, &mut e, None)?;
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Ascending eigenvalues and the first component of each normalized
/// eigenvector (sign not fixed), at O(n^2) cost.
pub fn tridiagonal_first_components(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    check(diag, offdiag)?;
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = Matrix::from_fn(1, n, |_, j| if j == 0 { 1.0 } else { 0.0 });
    tql(&mut d, &mut e, Some(&mut z))?;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[(0, i)]).collect()))
}
