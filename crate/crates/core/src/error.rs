use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different base rings")]
    MixedRings,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension {dim} is not of the form 2k")]
    OddDimension { dim: usize },
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },
    #[error("ideals <{left}> and <{right}> are not co-maximal")]
    NotComaximal { left: String, right: String },
    #[error("quotient ring is infinite; operation requires a finite quotient")]
    InfiniteQuotient,
    #[error("element {elem} is not a unit in its ring")]
    NotAUnit { elem: String },
    #[error("tuple is not unital: the entries do not generate the unit ideal")]
    NotUnital,
    #[error("row is not unimodular (gcd of entries is not a unit)")]
    NonUnimodularRow,
    #[error("matrix determinant is {det}, expected 1")]
    DeterminantNotOne { det: String },
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("search guard exceeded: {checked} candidates, cap {cap}")]
    GuardExceeded { checked: u128, cap: u128 },
    #[error("closure search exceeded cap {cap}; partial set has {} elements", partial.len())]
    ClosureCapExceeded {
        cap: usize,
        partial: Vec<crate::matgroup::RMatrix>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("empty input where at least one element is required")]
    EmptyInput,
    #[error("JSON decode error: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable code for scripting against the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedRings => "mixed_rings",
            Error::NotSquare { .. } => "not_square",
            Error::OddDimension { .. } => "odd_dimension",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::NotComaximal { .. } => "not_comaximal",
            Error::InfiniteQuotient => "infinite_quotient",
            Error::NotAUnit { .. } => "not_a_unit",
            Error::NotUnital => "not_unital",
            Error::NonUnimodularRow => "non_unimodular_row",
            Error::DeterminantNotOne { .. } => "determinant_not_one",
            Error::NotSymplectic => "not_symplectic",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::ClosureCapExceeded { .. } => "closure_cap_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotPrime(_) => "not_prime",
            Error::EmptyInput => "empty_input",
            Error::Json(_) => "json_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
