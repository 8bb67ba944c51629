//! Dense exact linear algebra over the Gaussian rationals.
//!
//! Everything downstream reduces to the primitives here: reduced
//! row-echelon forms, kernels, inverses, canonical subspace bases, and
//! polynomial invariants of matrices. All pivoting is by first nonzero
//! entry in row order, so every result is deterministic and
//! bit-reproducible.
//!
//! Matrices are vectorized in row-major order everywhere in this crate;
//! the commutant and family computations depend on that convention being
//! used consistently.

mod matrix;
mod poly;
mod subspace;

pub use matrix::{ExactMatrix, Rref};
pub use poly::{
    char_polynomial, companion_matrix, is_nonderogatory, minimal_polynomial, poly_gcd, Poly,
};
pub use subspace::SubspaceBasis;
