//! Seeded random generators for scalars, matrices and span members.
//!
//! Everything takes an explicit RNG so that any check built on top is
//! reproducible from its seed alone. Coefficients are kept small to
//! bound coefficient growth in the exact arithmetic downstream.

use rand::Rng;

use crate::exactfield::GaussianRational;
use crate::linalg::{ExactMatrix, SubspaceBasis};
use crate::toeplitz::BlockToeplitz;

/// Small Gaussian rational: integer, simple fraction, or an imaginary
/// variant of either.
pub fn gaussian(rng: &mut impl Rng) -> GaussianRational {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).expect("index");
    let base = GaussianRational::from_ratio(num, den);
    match rng.gen_range(0..4) {
        0 => base.times_i(),
        1 => &base + &GaussianRational::imaginary_ratio(rng.gen_range(-2..=2), 1),
        _ => base,
    }
}

pub fn nonzero_gaussian(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let x = gaussian(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Small integer coefficient for span combinations.
pub fn coefficient(rng: &mut impl Rng) -> GaussianRational {
    match rng.gen_range(0..6) {
        0 => GaussianRational::zero(),
        1 => GaussianRational::i(),
        _ => GaussianRational::from_int(rng.gen_range(-3i64..=3)),
    }
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Random member of a span: a small random combination of the canonical
/// basis vectors. May be zero.
pub fn member(rng: &mut impl Rng, basis: &SubspaceBasis) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); basis.ambient()];
    for basis_vector in basis.vectors() {
        let c = coefficient(rng);
        if c.is_zero() {
            continue;
        }
        for (vi, bi) in v.iter_mut().zip(basis_vector) {
            *vi += &(&c * bi);
        }
    }
    v
}

/// Random invertible member of a span of square matrices, by rejection.
pub fn invertible_member(
    rng: &mut impl Rng,
    basis: &SubspaceBasis,
    d: usize,
    attempts: usize,
) -> Option<ExactMatrix> {
    for _ in 0..attempts {
        let candidate = ExactMatrix::from_vec(d, d, &member(rng, basis)).expect("ambient d²");
        if candidate.is_invertible() {
            return Some(candidate);
        }
    }
    None
}

pub fn block_toeplitz(rng: &mut impl Rng, n: usize, d: usize) -> BlockToeplitz {
    BlockToeplitz::from_block_fn(n, d, |_| matrix(rng, d, d))
}

/// Random member of a span of block coefficient vectors, as a block
/// Toeplitz matrix.
pub fn member_bt(rng: &mut impl Rng, basis: &SubspaceBasis, n: usize, d: usize) -> BlockToeplitz {
    BlockToeplitz::from_coeff_vec(n, d, &member(rng, basis)).expect("ambient (2n−1)d²")
}
