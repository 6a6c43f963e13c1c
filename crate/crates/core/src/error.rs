use thiserror::Error;

/// Errors surfaced by the exact-computation layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in incompatible quadratic extensions: sqrt({0}) vs sqrt({1})")]
    MixedDiscs(num_bigint::BigInt, num_bigint::BigInt),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("variable {0} does not occur in the polynomial")]
    VarAbsent(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("all map components are zero")]
    AllComponentsZero,
    #[error("unsupported map degree {0}: expected 1, 2 or 3 after content clearing")]
    UnsupportedDegree(usize),
    #[error("the matrix kernel is generically at least 2-dimensional")]
    DegenerateKernel,
    #[error("the matrix has no kernel")]
    NoKernel,
    #[error("generic line images span a line; the dual planarization is not defined")]
    ImageSpansLine,
    #[error("the point is not a base point of the map")]
    NotABasePoint,
    #[error("the image of the map is not a surface")]
    NotASurfaceImage,
    #[error("no annihilating form of degree <= {0} exists")]
    DegreeBoundExceeded(usize),
    #[error("base locus is incomplete; the check cannot be certified")]
    IncompleteCheck,
    #[error("not a quadratic map with two-dimensional quadric image: {0}")]
    NotAQuadricImageMap(String),
    #[error("witness matrices must be invertible")]
    InvalidWitness,
    #[error("the map is trivial: its image lies in a plane")]
    TrivialMap,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
