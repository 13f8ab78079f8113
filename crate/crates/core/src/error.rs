use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` appears with a negative exponent")]
    NegativeExponent(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("index out of range: {0}")]
    RangeViolation(String),
    #[error("spectral parameters on the pole locus: {0}")]
    PoleViolation(String),
    #[error("coincident alphabet entries make a Vandermonde factor vanish")]
    DegenerateVandermonde,
    #[error("tau denominator vanishes: {0}")]
    DegenerateDenominator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
