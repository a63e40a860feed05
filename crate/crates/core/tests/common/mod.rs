#![allow(dead_code)]

pub mod oracles;

use num_complex::Complex64;

pub fn cx(p: (f64, f64)) -> Complex64 {
    Complex64::new(p.0, p.1)
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Globally adaptive Gauss-Kronrod integration of a complex integrand over
/// the given breakpoints; refines the worst panel until the summed error
/// estimate drops below `tol * |I|`.
pub fn integrate(f: &dyn Fn(f64) -> Complex64, breaks: &[f64], tol: f64) -> Complex64 {
    let mut panels: Vec<(f64, f64, Complex64, f64)> = breaks
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    for _ in 0..20_000 {
        let total: Complex64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol * total.norm() {
            return total;
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (a, b, _, _) = panels.swap_remove(i);
        let m = 0.5 * (a + b);
        let (v1, e1) = gk15(f, a, m);
        let (v2, e2) = gk15(f, m, b);
        panels.push((a, m, v1, e1));
        panels.push((m, b, v2, e2));
    }
    panic!("adaptive integration did not reach tolerance {tol}");
}

/// Deterministic pseudo-random stream for reproducible test matrices.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Generalized Laguerre polynomial `L_n^beta(x)` by its three-term recursion.
pub fn laguerre(n: usize, beta: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + beta + 1.0 - x) * cur - (kf + beta) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn ln_gamma(x: f64) -> f64 {
    pentajm::specfun::ln_gamma_complex(Complex64::new(x, 0.0)).unwrap().re
}

/// `F_n^+` by direct adaptive integration of the projection of `chi_+` onto
/// the basis function `n` (Laguerre or oscillator, by `laguerre_family`).
pub fn projected_coefficient(laguerre_family: bool, n: usize, mu: f64, nu: f64, beta: f64) -> Complex64 {
    use pentajm::specfun::{scaled_hankel, Sign};
    let nf = n as f64;
    let ln_norm = ln_gamma(nf + 1.0) - ln_gamma(nf + beta + 1.0);
    if laguerre_family {
        let pref = (mu * ln_norm.exp()).sqrt();
        let f = |x: f64| {
            if x == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            scaled_hankel(Sign::Plus, nu, mu * x).unwrap()
                * ((-0.5 * x).exp() * x.powf(0.5 * (beta - 1.0)) * laguerre(n, beta, x))
        };
        pref * integrate(&f, &[0.0, 0.25, 1.0, 3.0, 8.0, 20.0, 45.0, 90.0, 140.0], 1e-12)
    } else {
        let pref = (2.0 * mu * ln_norm.exp()).sqrt();
        let f = |x: f64| {
            if x == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            scaled_hankel(Sign::Plus, nu, mu * x).unwrap()
                * ((-0.5 * x * x).exp() * x.powf(beta) * laguerre(n, beta, x * x))
        };
        pref * integrate(&f, &[0.0, 0.25, 0.75, 1.5, 3.0, 5.0, 8.0, 12.0, 16.0], 1e-12)
    }
}

/// Random symmetric matrix with entries in `[-1, 1]`.
pub fn random_sym(rng: &mut impl rand::Rng, n: usize) -> pentajm::linalg::SymMatrix {
    pentajm::linalg::SymMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
}

/// Random symmetric positive-definite matrix `A A^T + shift I`.
pub fn random_spd(rng: &mut impl rand::Rng, n: usize, shift: f64) -> pentajm::linalg::SymMatrix {
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    pentajm::linalg::SymMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| a[i][k] * a[j][k]).sum::<f64>() + if i == j { shift } else { 0.0 }
    })
}

/// Dense `(H - z Omega)^{-1}` column by column through the LU solver.
pub fn direct_inverse(
    h: &pentajm::linalg::SymMatrix,
    omega: Option<&pentajm::linalg::SymMatrix>,
    z: f64,
) -> pentajm::linalg::Matrix {
    use pentajm::linalg::{solve_dense, Matrix};
    let n = h.order();
    let a = Matrix::from_fn(n, n, |i, j| {
        h.get(i, j) - z * omega.map_or(if i == j { 1.0 } else { 0.0 }, |o| o.get(i, j))
    });
    let mut out = Matrix::zeros(n, n);
    for c in 0..n {
        let e: Vec<f64> = (0..n).map(|i| if i == c { 1.0 } else { 0.0 }).collect();
        let x = solve_dense(&a, &e).unwrap();
        for r in 0..n {
            out[(r, c)] = x[r];
        }
    }
    out
}
