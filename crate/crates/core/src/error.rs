use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("overflow in {0}")]
    Overflow(&'static str),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("subcritical coupling: A = {strength} <= (l + 1/2)^2 with l = {ell}")]
    Regime { ell: u32, strength: f64 },

    #[error("division by zero in recursion at index {index}")]
    DivisionByZero { index: usize },

    #[error("zero denominator F_n^- at n = {index}")]
    ZeroDenominator { index: usize },

    #[error("singular matrix (condition estimate {condition:e})")]
    Singular { condition: f64 },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("eigenvalue iteration limit reached")]
    EigenIteration,

    #[error("degenerate eigenvalues {0} and {1}")]
    Degenerate(f64, f64),

    #[error("energy {energy} coincides with an inner-operator eigenvalue")]
    SpectrumPole { energy: f64 },

    #[error("unitarity violated: ||S| - 1| = {defect:e}")]
    UnitarityViolation { defect: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
