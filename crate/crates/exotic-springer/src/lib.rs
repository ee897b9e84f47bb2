//! Exact-arithmetic toolkit for the geometry of exotic Springer fibres.
//!
//! The crate models marked symplectic nilpotent pairs `(v, x)` classified by
//! bipartitions, computes their exotic Jordan types, predicts how those types
//! change under reduction by an admissible line, and realises the bijection
//! between pairs of standard bitableaux and signed permutations by sampling
//! generic flags in a fibre and reading off relative positions.
//!
//! Every linear-algebra computation runs over arbitrary-precision rationals.
//! There are no floating point numbers anywhere in the crate, so agreement
//! checks between the combinatorial predictions and the brute-force matrix
//! computations are exact.
//!
//! Module map:
//! - [`partition`], [`tableau`]: partitions, bipartitions, standard
//!   bitableaux, dimension statistics.
//! - [`linalg`]: dense rational matrices, row echelon subspaces, skew forms,
//!   quotients, Jordan types.
//! - [`exotic`]: normal forms of marked pairs, exotic Jordan type, reduction
//!   by a line, fibre membership, the type-sequence map of a flag.
//! - [`normalize`]: recovery of an adapted basis for an arbitrary valid point.
//! - [`jordan`]: closed-form predictions for one-step reductions, seeded
//!   samplers for lines and generic flags.
//! - [`oracle`]: independent brute-force versions of everything `jordan`
//!   predicts, computed from explicit subspace chains.
//! - [`weyl`]: signed permutations, their embedding into `S_2n`, relative
//!   position of two symplectic flags.
//! - [`rs`]: the sampled correspondence tables and the naive insertion
//!   algorithm used for comparison.

pub mod exotic;
pub mod jordan;
pub mod linalg;
pub mod normalize;
pub mod oracle;
pub mod partition;
pub mod rs;
pub mod seeding;
pub mod tableau;
pub mod weyl;

pub use partition::{Bipartition, Partition, Side};
pub use tableau::StandardBitableau;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("linear algebra error: {0}")]
    Linalg(String),
    #[error("not a valid marked nilpotent point: {0}")]
    Point(String),
    #[error("prediction failed: {0}")]
    Prediction(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("consensus failed: {0}")]
    Consensus(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
