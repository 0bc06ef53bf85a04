//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by code construction, surgery and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parity checks do not commute: P_X * P_Z^T has a one at ({row}, {col})")]
    Commutation { row: usize, col: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("vector is not a nontrivial {0} logical of the code")]
    NotALogical(String),
    #[error("logical operator is not irreducible")]
    NotIrreducible,
    #[error("no monic span: the logical operator subcomplexes are not isomorphic")]
    NoSpan,
    #[error("logical operators overlap on {0}")]
    Overlap(String),
    #[error("code has no logical qubits")]
    NoLogicals,
    #[error("no logical of weight at most {0} exists")]
    CapExceeded(usize),
    #[error("invalid circuit: {0}")]
    Circuit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
