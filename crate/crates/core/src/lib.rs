//! Exact-arithmetic toolkit for commutative algebras of block Toeplitz
//! matrices.
//!
//! The crate constructs, over the Gaussian rationals, the classical
//! generalized-circulant algebras of scalar Toeplitz matrices, the block
//! Toeplitz families coupled by a pair of entry matrices, and the
//! commutant machinery needed to certify that a given family is a
//! maximal commutative algebra — all with zero-tolerance exact checks.
//!
//! Conventions used throughout:
//!
//! - A block Toeplitz matrix of block order `n` and block size `d` is
//!   determined by its `2n−1` blocks `T_j`, `j = −(n−1) … n−1`, with the
//!   dense expansion placing `T_{p−q}` at block position `(p, q)`.
//!   Positive indices therefore sit below the main block diagonal.
//! - Matrices are vectorized row-major; block coefficient vectors list
//!   blocks in ascending index order.
//! - The generalized circulant with parameter `alpha` satisfies
//!   `alpha·t_j = t_{j−n}` for `j = 1 … n−1` (`alpha = 0` gives the lower
//!   triangular Toeplitz matrices, `alpha = ∞` the upper triangular ones).
//!
//! Start with the runnable programs under `examples/` for a tour of each
//! capability; the `btalg` binary exposes the same operations as JSON-in,
//! JSON-out subcommands.

pub mod casestudies;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod family;
pub mod json;
pub mod linalg;
pub mod sample;
pub mod subalgebras;
pub mod suite;
pub mod toeplitz;

pub use error::{Error, Result};
pub use exactfield::{GaussianRational, Rational};
pub use linalg::{ExactMatrix, Poly, SubspaceBasis};
pub use toeplitz::{BlockToeplitz, CirculantParam};
