use thiserror::Error;

/// Errors raised by the identification library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),

    #[error("unsupported tensor rank {0} (expected 2..=6)")]
    UnsupportedRank(usize),

    #[error("index position {position} out of range for rank {rank}")]
    IndexOutOfRange { position: usize, rank: usize },

    #[error("index positions must be pairwise distinct: {0:?}")]
    OverlappingPositions(Vec<usize>),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("monomial of total degree {degree} exceeds the supported cap {cap}")]
    UnsupportedDegree { degree: u32, cap: u32 },

    #[error("integrand is not finite at quadrature node {node}")]
    NonFiniteIntegrand { node: usize },

    #[error("tensor is not isotropic: component {component} deviates by {deviation:e}")]
    NotIsotropic { component: String, deviation: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
