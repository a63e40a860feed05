use super::Matrix;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    parity: f64,
    norm1: f64,
}

impl Lu {
    pub fn new(a: &Matrix) -> Result<Self> {
        let n = a.rows();
        if n == 0 || a.cols() != n {
            return Err(Error::InvalidInput("LU needs a non-empty square matrix".into()));
        }
        let norm1 = (0..n).map(|j| (0..n).map(|i| a[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max);
        if !norm1.is_finite() {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| lu[(x, k)].abs().total_cmp(&lu[(y, k)].abs())).unwrap_or(k);
            if lu[(p, k)] == 0.0 {
                return Err(Error::Singular { condition: f64::INFINITY });
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(p, j)];
                    lu[(p, j)] = lu[(k, j)];
                    lu[(k, j)] = t;
                }
                perm.swap(p, k);
                parity = -parity;
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let m = lu[(i, k)] / piv;
                lu[(i, k)] = m;
                if m != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= m * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self { lu, perm, parity, norm1 })
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.lu[(i, k)] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] -= self.lu[(i, k)] * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        let mut w = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                w[i] -= self.lu[(k, i)] * w[k];
            }
            w[i] /= self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                w[i] -= self.lu[(k, i)] * w[k];
            }
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }

    /// Determinant as (sign, ln |det|).
    pub fn ln_det(&self) -> (f64, f64) {
        let mut sign = self.parity;
        let mut ln = 0.0;
        for i in 0..self.order() {
            let u = self.lu[(i, i)];
            sign *= u.signum();
            ln += u.abs().ln();
        }
        (sign, ln)
    }

    /// 1-norm condition number estimate (Hager's method).
    pub fn condition_estimate(&self) -> f64 {
        let n = self.order();
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        for _ in 0..5 {
            let y = self.solve(&x);
            est = y.iter().map(|v| v.abs()).sum::<f64>();
            let xi: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose(&xi);
            let (j, zmax) = z.iter().enumerate().fold((0, 0.0f64), |(bj, bm), (i, v)| if v.abs() > bm { (i, v.abs()) } else { (bj, bm) });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![0.0; n];
            x[j] = 1.0;
        }
        est * self.norm1
    }
}

/// Solves `a x = b`, failing when `a` is numerically singular.
pub fn solve_dense(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return Err(Error::InvalidInput("right-hand side length mismatch".into()));
    }
    let lu = Lu::new(a)?;
    let cond = lu.condition_estimate();
    if !(cond < 1.0 / f64::EPSILON) {
        return Err(Error::Singular { condition: cond });
    }
    Ok(lu.solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]);
        let x = solve_dense(&a, &[3.0, 2.0, 4.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
        let lu = Lu::new(&a).unwrap();
        let (s, l) = lu.ln_det();
        assert!((s * l.exp() - (-5.0)).abs() < 1e-13);
        let t = lu.solve_transpose(&[4.0, 3.0, 2.0]);
        let at = a.transpose().matvec(&t);
        assert!((at[0] - 4.0).abs() < 1e-13 && (at[2] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(solve_dense(&a, &[1.0, 1.0]), Err(Error::Singular { .. })));
        let b = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0 + 1e-17]]);
        assert!(matches!(solve_dense(&b, &[1.0, 1.0]), Err(Error::Singular { .. })));
    }

    #[test]
    fn condition_of_diagonal() {
        let a = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-6]]);
        let c = Lu::new(&a).unwrap().condition_estimate();
        assert!((c - 1e6).abs() < 1.0);
    }
}
