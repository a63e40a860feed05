mod common;

use common::{random_spd, random_sym, rng};
use pentajm::linalg::*;
use pentajm::Error;
use proptest::prelude::*;

fn residual(a: &SymMatrix, e: &EigenDecomposition) -> f64 {
    let n = a.order();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let v = e.vectors.column(k);
        let av = a.matvec(&v);
        for i in 0..n {
            worst = worst.max((av[i] - e.values[k] * v[i]).abs());
        }
    }
    worst
}

fn orthonormality(m: &Matrix) -> f64 {
    let p = m.transpose().matmul(m);
    let id = Matrix::identity(m.cols());
    (0..m.cols()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| (p[(i, j)] - id[(i, j)]).abs()).fold(0.0, f64::max)
}

#[test]
fn small_known_spectra() {
    let e = eig_sym_tridiagonal(&[1.0, 3.0], &[-1.0]).unwrap();
    assert!((e.values[0] - (2.0 - 2f64.sqrt())).abs() < 1e-14);
    assert!((e.values[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    let e = eig_sym_tridiagonal(&[3.0, -1.0, 2.0], &[0.0, 0.0]).unwrap();
    assert_eq!(e.values, vec![-1.0, 2.0, 3.0]);
    for k in 0..3 {
        assert_eq!(e.vectors.column(k).iter().map(|v| v.abs()).sum::<f64>(), 1.0);
    }
    let e = eig_sym_dense(&SymMatrix::identity(4)).unwrap();
    assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    let e = eig_sym_dense(&SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 })).unwrap();
    assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
}

#[test]
fn decoupled_generalized_problem() {
    let h = SymMatrix::from_fn(2, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
    let o = SymMatrix::from_fn(2, |i, j| if i == j { [1.0, 4.0][i] } else { 0.0 });
    let g = eig_sym_generalized(&h, &o).unwrap();
    assert!((g.values[0] - 0.5).abs() < 1e-15 && (g.values[1] - 1.0).abs() < 1e-15);
}

#[test]
fn identity_overlap_reduces_to_standard() {
    let mut r = rng(7);
    let h = random_sym(&mut r, 6);
    let g = eig_sym_generalized(&h, &SymMatrix::identity(6)).unwrap();
    let e = eig_sym_dense(&h).unwrap();
    for k in 0..6 {
        assert!((g.values[k] - e.values[k]).abs() < 1e-13);
        assert!((g.tau[k] - 1.0).abs() < 1e-13);
        assert!((g.eta[k] - e.values[k]).abs() < 1e-13);
    }
}

#[test]
fn small_solves() {
    let x = solve_dense(&Matrix::identity(3), &[1.0, -2.0, 3.0]).unwrap();
    assert_eq!(x, vec![1.0, -2.0, 3.0]);
    let x = solve_dense(&Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]), &[2.0, 4.0]).unwrap();
    assert_eq!(x, vec![1.0, 1.0]);
    let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
    assert!(matches!(solve_dense(&singular, &[1.0, 1.0]), Err(Error::Singular { .. })));
}

#[test]
fn cholesky_rejects_indefinite() {
    let a = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 2.0 });
    assert!(matches!(cholesky(&a), Err(Error::NotPositiveDefinite { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tridiagonal_eigen_invariants(seed in any::<u64>(), n in 1usize..40) {
        let mut r = rng(seed);
        use rand::Rng;
        let d: Vec<f64> = (0..n).map(|_| r.gen_range(-5.0..5.0)).collect();
        let e: Vec<f64> = (0..n.saturating_sub(1)).map(|_| r.gen_range(-2.0..2.0)).collect();
        let dec = eig_sym_tridiagonal(&d, &e).unwrap();
        let a = SymMatrix::from_fn(n, |i, j| if i == j { d[i] } else if i == j + 1 { e[j] } else { 0.0 });
        prop_assert!(residual(&a, &dec) < 1e-12);
        prop_assert!(orthonormality(&dec.vectors) < 1e-12);
        prop_assert!(dec.values.windows(2).all(|w| w[0] <= w[1]));
        let vals = eigvals_sym_tridiagonal(&d, &e).unwrap();
        for (x, y) in vals.iter().zip(&dec.values) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        let (nodes, first) = tridiagonal_first_components(&d, &e).unwrap();
        for k in 0..n {
            prop_assert!((nodes[k] - dec.values[k]).abs() < 1e-12);
            prop_assert!((first[k].abs() - dec.vectors[(0, k)].abs()).abs() < 1e-10);
        }
        let dense = eig_sym_dense(&a).unwrap();
        for (x, y) in dense.values.iter().zip(&dec.values) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_eigen_invariants(seed in any::<u64>(), n in 1usize..30) {
        let mut r = rng(seed);
        let a = random_sym(&mut r, n);
        let dec = eig_sym_dense(&a).unwrap();
        prop_assert!(residual(&a, &dec) < 1e-12 * (n as f64));
        prop_assert!(orthonormality(&dec.vectors) < 1e-12 * (n as f64));
        let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
        prop_assert!((trace - dec.values.iter().sum::<f64>()).abs() < 1e-11 * (n as f64));
    }

    #[test]
    fn generalized_simultaneous_diagonalization(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let h = random_sym(&mut r, n);
        let o = random_spd(&mut r, n, 0.5);
        let g = eig_sym_generalized(&h, &o).unwrap();
        let gt = g.vectors.transpose();
        let ho = gt.matmul(&h.to_dense()).matmul(&g.vectors);
        let oo = gt.matmul(&o.to_dense()).matmul(&g.vectors);
        for i in 0..n {
            for j in 0..n {
                let (hw, ow) = if i == j { (g.eta[i], g.tau[i]) } else { (0.0, 0.0) };
                prop_assert!((ho[(i, j)] - hw).abs() < 1e-10);
                prop_assert!((oo[(i, j)] - ow).abs() < 1e-10);
            }
            prop_assert!((g.eta[i] - g.values[i] * g.tau[i]).abs() < 1e-12 * g.eta[i].abs().max(1.0));
            let norm: f64 = g.vectors.column(i).iter().map(|v| v * v).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lu_solves_well_conditioned_systems(seed in any::<u64>(), n in 1usize..16) {
        use rand::Rng;
        let mut r = rng(seed);
        let a = Matrix::from_fn(n, n, |i, j| r.gen_range(-1.0..1.0) + if i == j { 2.0 * n as f64 } else { 0.0 });
        let b: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let x = solve_dense(&a, &b).unwrap();
        let ax = a.matvec(&x);
        for i in 0..n {
            prop_assert!((ax[i] - b[i]).abs() < 1e-12 * (n as f64));
        }
        let lu = Lu::new(&a).unwrap();
        let y = lu.solve_transpose(&b);
        let aty = a.transpose().matvec(&y);
        for i in 0..n {
            prop_assert!((aty[i] - b[i]).abs() < 1e-12 * (n as f64));
        }
    }

    #[test]
    fn general_eigenvalues_match_symmetric(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let a = random_sym(&mut r, n);
        let mut z = eigvals_general(&a.to_dense()).unwrap();
        z.sort_by(|x, y| x.re.total_cmp(&y.re));
        let e = eig_sym_dense(&a).unwrap();
        for (x, y) in z.iter().zip(&e.values) {
            prop_assert!((x.re - y).abs() < 1e-10 && x.im.abs() < 1e-10);
        }
    }
}
