//! Penta-diagonal J-matrix scattering for short-range potentials that carry a
//! supercritical inverse-square singularity `-A/(2r^2)` with `A > (l+1/2)^2`.
//!
//! Module map:
//! - [`specfun`]: complex log-gamma, Bessel/Hankel functions of imaginary order,
//!   Gauss and confluent hypergeometric series, associated Legendre functions.
//! - [`refsol`]: the reference problem (basis functions, recursion coefficients,
//!   closed-form seeds, five-term and ratio recursions).
//! - [`potmat`]: Gauss quadrature from Jacobi matrices and potential matrices.
//! - [`linalg`]: in-repo symmetric eigensolvers and a dense LU solver.
//! - [`greens`]: finite Green's function in orthogonal and non-orthogonal bases.
//! - [`smatrix`]: inner operator assembly, S-matrix, phase shifts.

pub mod error;
pub mod greens;
pub mod linalg;
pub mod potmat;
pub mod refsol;
pub mod smatrix;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
