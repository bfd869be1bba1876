use thiserror::Error;

use crate::lattice::Lattice;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice mismatch: {0} vs {1}")]
    LatticeMismatch(Lattice, Lattice),
    #[error("parity norm needs finite support: {side} boundary bit is 1")]
    NonzeroBoundary { side: &'static str },
    #[error("inverse from the {side} needs a zero {side} boundary bit")]
    WrongBoundaryClass { side: &'static str },
    #[error("inverse would leave the eventually-constant class: {side} boundary bit is 1")]
    UnrepresentableInverse { side: &'static str },
    #[error("ring configuration has odd parity; the interface map is not invertible there")]
    RingOddParity,
    #[error("pair is not admissible for the parity pairing")]
    InadmissiblePair,
    #[error("operator rows mix both lattice parities")]
    MixedRowParity,
    #[error("operator columns mix both lattice parities")]
    MixedColParity,
    #[error("operator is not type-symmetric (a row has odd size)")]
    NotTypeSymmetric,
    #[error("operator is not parity-preserving (a column has odd size)")]
    NotParityPreserving,
    #[error("table is not type-symmetric")]
    TableNotTypeSymmetric,
    #[error("table is not parity-preserving")]
    TableNotParityPreserving,
    #[error("ring of {n} sites is too small for an operator of span {span} sites")]
    RingTooSmall { n: u32, span: u32 },
    #[error("ring of {n} sites is too small for range-{range} duality checks (need n >= 4R+2)")]
    RingTooSmallForDuality { n: u32, range: u32 },
    #[error("state space 2^{n} exceeds the exact-engine cap of 2^{cap}")]
    StateSpaceTooLarge { n: u32, cap: u32 },
    #[error("window does not cover the neighbourhood of the requested site")]
    InsufficientWindow,
    #[error("competition parameter {0} is outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("rate {0} is not a positive finite number")]
    InvalidRate(f64),
    #[error("model range must be at least 2 (got {0})")]
    RangeTooSmall(u32),
    #[error("operator entry exceeds the declared range {range}")]
    RangeExceeded { range: u32 },
    #[error("span cap {cap} is too small: transitions out of the single-particle state already leak")]
    SpanCapTooSmall { cap: u32 },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
