mod common;

use std::f64::consts::PI;

use common::{cx, oracles::*, rel_err};
use pentajm::refsol::PhysicalParams;
use pentajm::specfun::*;
use pentajm::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Log-gamma values agree up to a multiple of `2 pi i`.
fn assert_ln_gamma(z: Complex64, want: (f64, f64)) {
    let got = ln_gamma_complex(z).unwrap();
    assert!((got.re - want.0).abs() < 1e-12 * want.0.abs().max(1.0), "Re ln Gamma({z}): {} vs {}", got.re, want.0);
    let d = got.im - want.1;
    let wrapped = d - 2.0 * PI * (d / (2.0 * PI)).round();
    assert!(wrapped.abs() < 1e-12 * want.1.abs().max(1.0), "Im ln Gamma({z}): {} vs {}", got.im, want.1);
}

#[test]
fn ln_gamma_against_extended_precision() {
    assert_ln_gamma(c(1.0, 3.0), LN_GAMMA_1_3I);
    assert_ln_gamma(c(0.5, 3.0), LN_GAMMA_HALF_3I);
    assert_ln_gamma(c(3.5, -2.0), LN_GAMMA_35_M2I);
    assert_ln_gamma(c(-2.5, 0.5), LN_GAMMA_NEG);
    assert_ln_gamma(c(40.0, 25.0), LN_GAMMA_BIG);
}

#[test]
fn gamma_modulus_example() {
    let g = ln_gamma_complex(c(1.0, 3.0)).unwrap().exp();
    assert!((g.norm() - 0.039001).abs() < 1e-6);
}

#[test]
fn bessel_against_extended_precision() {
    let cases = [
        (3.0, 0.1, J_3I_0P1),
        (3.0, 2.5, J_3I_2P5),
        (3.0, 19.0, J_3I_19),
        (3.0, 25.0, J_3I_25),
        (0.5, 10.0, J_HALF_I_10),
        (5.0, 7.0, J_5I_7),
    ];
    for (nu, y, want) in cases {
        let got = bessel_imag_order(nu, y).unwrap();
        assert!(rel_err(got, cx(want)) < 1e-10, "J_(i{nu})({y}) = {got}, want {want:?}");
    }
}

#[test]
fn scaled_hankel_against_extended_precision() {
    let cases = [(3.0, 20.0, AH_3_20), (3.0, 30.0, AH_3_30), (5.0, 40.0, AH_5_40), (0.5, 5.0, AH_HALF_5)];
    for (nu, y, want) in cases {
        let got = scaled_hankel(Sign::Plus, nu, y).unwrap();
        assert!(rel_err(got, cx(want)) < 1e-10, "A+H+ ({nu}, {y}) = {got}, want {want:?}");
        let minus = scaled_hankel(Sign::Minus, nu, y).unwrap();
        assert_eq!(minus, got.conj());
    }
}

#[test]
fn chi_against_extended_precision() {
    let p = PhysicalParams::from_mu_nu(2.0, 3.0, 1.0).unwrap();
    let got = chi_reference(Sign::Plus, &p, 10.0).unwrap();
    assert!(rel_err(got, cx(CHI_MU2_NU3_X10)) < 1e-10);
}

#[test]
fn hankel_amplitude_far_out() {
    let nu = 3.0;
    let y = 200.0;
    let amp = scaled_hankel(Sign::Plus, nu, y).unwrap().norm() * y.sqrt();
    let target = (2.0 / PI).sqrt();
    assert!((amp - target).abs() / target < 1e-2);
    let chi = chi_reference(Sign::Plus, &PhysicalParams::from_mu_nu(2.0, 3.0, 1.0).unwrap(), 1e4).unwrap();
    assert!((chi.norm() - target).abs() < 1e-3);
}

#[test]
fn hypergeometric_against_extended_precision() {
    let g = 1.5;
    let got = hyp2f1(c(0.5 * (1.0 + g), 1.5), c(-0.5 * g, 1.5), c(1.0, 3.0), 16.0 / 17.0).unwrap();
    assert!(rel_err(got, cx(HYP2F1_LEGENDRE)) < 1e-10);
    let got = hyp2f1(c(0.3, 1.2), c(-0.7, 0.4), c(2.1, -0.5), 0.93).unwrap();
    assert!(rel_err(got, cx(HYP2F1_GENERIC)) < 1e-10);
    let got = hyp1f1(c(0.5, 3.0), c(1.0, 3.0), 2.0).unwrap();
    assert!(rel_err(got, cx(HYP1F1_A)) < 1e-10);
    let got = hyp1f1(c(-2.5, 1.5), c(1.0, 3.0), 2.0).unwrap();
    assert!(rel_err(got, cx(HYP1F1_B)) < 1e-10);
}

#[test]
fn hypergeometric_closed_forms() {
    assert_eq!(hyp2f1(c(0.3, 1.0), c(2.0, 0.0), c(1.5, 0.0), 0.0).unwrap(), c(1.0, 0.0));
    assert_eq!(hyp2f1(c(0.3, 1.0), c(0.0, 0.0), c(1.5, 0.0), 0.7).unwrap(), c(1.0, 0.0));
    let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.5).unwrap();
    assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-12 && v.im.abs() < 1e-14);
    assert_eq!(hyp1f1(c(0.5, 3.0), c(1.0, 3.0), 0.0).unwrap(), c(1.0, 0.0));
    let v = hyp1f1(c(1.0, 0.0), c(1.0, 0.0), 1.7).unwrap();
    assert!((v.re - 1.7f64.exp()).abs() < 1e-12 * 1.7f64.exp());
}

#[test]
fn kummer_transformation() {
    let (a, cc, z) = (c(0.5, 3.0), c(1.0, 3.0), 2.0);
    let lhs = hyp1f1(a, cc, -z).unwrap();
    let rhs = (-z).exp() * hyp1f1(cc - a, cc, z).unwrap();
    assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
}

#[test]
fn legendre_against_extended_precision() {
    let got = assoc_legendre_p(c(0.0, -3.0), c(1.5, 0.0), 1.0 / 17f64.sqrt()).unwrap();
    assert!(rel_err(got, cx(LEGENDRE_P_M3I_1P5)) < 1e-10, "{got}");
}

#[test]
fn legendre_classical_cases() {
    for &x in &[0.0, 0.3, 0.9, 1.0] {
        let p0 = assoc_legendre_p(c(0.0, 0.0), c(0.0, 0.0), x).unwrap();
        assert!((p0 - 1.0).norm() < 1e-14);
        let p1 = assoc_legendre_p(c(0.0, 0.0), c(1.0, 0.0), x).unwrap();
        assert!((p1 - x).norm() < 1e-13, "P1({x}) = {p1}");
    }
}

#[test]
fn bessel_near_zero_order() {
    let v = bessel_imag_order(1e-9, 1.0).unwrap();
    assert!((v.re - 0.765_197_7).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_modulus_identity(nu in 0.05f64..8.0) {
        let g = ln_gamma_complex(c(1.0, nu)).unwrap();
        let lhs = (2.0 * g.re).exp() * (PI * nu).sinh();
        prop_assert!((lhs / (PI * nu) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hankel_pair_sums_to_bessel(nu in 0.2f64..5.0, y in 0.05f64..60.0) {
        let hp = scaled_hankel(Sign::Plus, nu, y).unwrap() * (0.5 * PI * nu).exp();
        let hm = scaled_hankel(Sign::Minus, nu, y).unwrap() * (-0.5 * PI * nu).exp();
        let j = bessel_imag_order(nu, y).unwrap();
        prop_assert!((hp + hm - 2.0 * j).norm() <= 1e-9 * (hp.norm() + j.norm()));
    }

    #[test]
    fn chi_conjugate_pair(mu in 0.2f64..4.0, nu in 0.3f64..5.0, r in 0.01f64..40.0) {
        let p = PhysicalParams::from_mu_nu(mu, nu, 1.0).unwrap();
        let a = chi_reference(Sign::Plus, &p, r).unwrap();
        let b = chi_reference(Sign::Minus, &p, r).unwrap();
        prop_assert_eq!(a.conj(), b);
    }

    #[test]
    fn legendre_conjugate_orders(nu in 0.1f64..5.0, gam in 0.0f64..6.0, x in 0.0f64..1.0) {
        let p = assoc_legendre_p(c(0.0, -nu), c(gam, 0.0), x).unwrap();
        let q = assoc_legendre_p(c(0.0, nu), c(gam, 0.0), x).unwrap();
        prop_assert!((p.conj() - q).norm() <= 1e-11 * p.norm().max(1e-300));
    }

    #[test]
    fn kummer_identity(ar in -3.0f64..3.0, ai in -3.0f64..3.0, ci in 0.5f64..4.0, z in 0.0f64..6.0) {
        let a = c(ar, ai);
        let cc = c(1.0, ci);
        let lhs = hyp1f1(a, cc, -z).unwrap();
        let rhs = (-z).exp() * hyp1f1(cc - a, cc, z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(rhs.norm()).max(1e-3));
    }
}
