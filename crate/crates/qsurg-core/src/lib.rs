//! CSS quantum codes as chain complexes over GF(2), and code surgery.
//!
//! A CSS code is stored as its pair of parity-check matrices `(P_Z, P_X)`,
//! read as the complex `C_2 → C_1 → C_0` with `∂_2 = P_Z^T` and `∂_1 = P_X`.
//! The crate builds standard code families, finds logical operators and
//! their restricted check structure, merges codes along matching logicals
//! with colimit constructions, and estimates distances of the results.

pub mod circuit;
pub mod css;
pub mod distance;
pub mod error;
pub mod families;
pub mod gf2;
pub mod io;
pub mod logicals;
pub mod ring;
pub mod span;
pub mod surgery;

pub use css::{tensor_code, Basis, ChainMap2, CodeStats, CssCode};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, RowReducer};
pub use logicals::{LogicalBasis, Subcomplex};
pub use span::MonicSpan;
pub use surgery::{MergeKind, MergeResult};
