//! Crate-wide error type.

use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    ZeroDivision,

    #[error("generator must be unit imaginary (real part {real_part:.3e}, norm {norm:.6})")]
    InvalidGenerator { real_part: f64, norm: f64 },

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("map does not intertwine the scalar actions (residual {residual:.3e})")]
    NotIntertwining { residual: f64 },

    #[error("map is not invertible")]
    NotInvertible,

    #[error("rank-deficient Gram matrix (pivot {pivot:.3e} at step {step})")]
    RankDeficient { pivot: f64, step: usize },

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("subspace is not invariant under the scalar actions (residual {residual:.3e})")]
    InvalidSubspace { residual: f64 },

    #[error("invalid representation of H: {0}")]
    InvalidRepresentation(String),

    #[error("unsupported norm: {0}")]
    UnsupportedNorm(String),

    #[error("no separating functional for the zero vector")]
    NoSeparator,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra is not normal: witness has |a*a - aa*| = {deviation:.3e}")]
    NotNormal {
        witness: Box<DMatrix<f64>>,
        deviation: f64,
    },

    #[error("joint diagonalization failed: {0}")]
    Diagonalization(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
