use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime >= 2")]
    NotPrime(u32),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("residue {value} out of range for modulus {p}")]
    ResidueOutOfRange { value: u32, p: u32 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid channel layout: {0}")]
    InvalidLayout(String),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid code specification: {0}")]
    InvalidSpec(String),

    #[error("dense oracle needs {needed} amplitudes, cap is {cap}")]
    OracleLimit { needed: u128, cap: usize },

    #[error("search space of {0} candidates is too large for the dense compatibility table")]
    SearchTooLarge(usize),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
