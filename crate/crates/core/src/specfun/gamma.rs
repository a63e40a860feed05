use num_complex::Complex64;

use super::is_nonpositive_integer;
use crate::error::{Error, Result};

const SHIFT_TARGET: f64 = 15.0;
const MAX_SHIFT: usize = 10_000_000;

// B_{2k} / (2k (2k-1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Principal branch of `ln Gamma(z)`.
///
/// The argument is shifted upward until `Re z >= 15`, the Stirling series is
/// applied there and `sum ln(z + k)` is subtracted. Each logarithm is taken on
/// its principal branch, which yields the branch that is continuous away from
/// the negative real axis (the same convention as `scipy.special.loggamma`).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("ln_gamma of non-finite {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "gamma", at: format!("{z}") });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut steps = 0usize;
    while w.re < SHIFT_TARGET {
        shift += w.ln();
        w += 1.0;
        steps += 1;
        if steps > MAX_SHIFT {
            return Err(Error::Domain(format!("ln_gamma argument too far left: {z}")));
        }
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: Complex64) -> Complex64 {
    let half_ln_two_pi = 0.918_938_533_204_672_8;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        tail = tail * inv2 + *c;
    }
    (w - 0.5) * w.ln() - w + half_ln_two_pi + tail * inv
}

/// `1 / Gamma(z)`, returning zero at the poles.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    match ln_gamma_complex(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_and_half() {
        assert!(ln_gamma_complex(Complex64::new(1.0, 0.0)).unwrap().norm() < 1e-14);
        let h = ln_gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!((h.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(h.im.abs() < 1e-15);
    }

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..30 {
            f *= n as f64;
            let l = ln_gamma_complex(Complex64::new(n as f64 + 1.0, 0.0)).unwrap();
            assert!((l.re - f.ln()).abs() < 1e-13 * f.ln().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn poles() {
        for n in 0..5 {
            let z = Complex64::new(-(n as f64), 0.0);
            assert!(matches!(ln_gamma_complex(z), Err(Error::Pole { .. })));
            assert_eq!(reciprocal_gamma(z), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn modulus_on_imaginary_line() {
        let g = ln_gamma_complex(Complex64::new(1.0, 3.0)).unwrap().exp();
        let want = (3.0 * std::f64::consts::PI / (3.0 * std::f64::consts::PI).sinh()).sqrt();
        assert!((g.norm() - want).abs() < 1e-14 * want);
    }

    #[test]
    fn negative_real_axis_sign() {
        // Gamma(-1.5) = 4 sqrt(pi) / 3 > 0, Gamma(-0.5) = -2 sqrt(pi)
        let g = ln_gamma_complex(Complex64::new(-1.5, 0.0)).unwrap().exp();
        assert!((g.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
        let g = ln_gamma_complex(Complex64::new(-0.5, 0.0)).unwrap().exp();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }
}
