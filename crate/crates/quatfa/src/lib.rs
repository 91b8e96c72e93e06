//! Finite-dimensional quaternionic linear algebra.
//!
//! The crate realizes, at desk scale, the structure theory of quaternion
//! vector spaces and their normed refinements: bimodules over `H` with the
//! polarization decomposition and the equivalence with real vector spaces,
//! Hilbertian norms with functional lifting and norm-preserving extension,
//! quaternion Hilbert spaces in three equivalent formulations together with
//! constructive converters, the dual space of maps into the tensor square
//! with its Riesz representation, and quaternion `B*`-algebras with
//! Gelfand-Naimark representations and the Gelfand transform of normal
//! algebras. Every structural identity is backed by a seeded numeric
//! verification suite exposed through the `quatfa` binary; see the
//! `examples/` directory for a tour of each capability.

pub mod algebra;
pub mod bimodule;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod normed;
pub mod quat;
pub mod report;
pub mod sample;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
pub use quat::{Basis, ComplexEmbedding, DualFunctional, Quaternion, Side};
