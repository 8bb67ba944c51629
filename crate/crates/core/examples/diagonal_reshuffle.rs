//! Diagonal entries decouple: the reshuffle permutation.
//!
//! Reordering the basis by coordinate instead of by block turns any
//! block Toeplitz matrix with diagonal blocks into a direct sum of d
//! scalar Toeplitz matrices of order n. Each summand must then be
//! multiplicatively closed on its own, which pins every commutative
//! algebra of diagonal-entry block Toeplitz matrices inside a coupled
//! family with diagonal factors.
//!
//! Run with: cargo run --example diagonal_reshuffle

use btalg::casestudies::{diagonal_entries_case, diagonal_factors, ReshufflePermutation};
use btalg::toeplitz::CirculantParam;
use btalg::{BlockToeplitz, ExactMatrix, GaussianRational};

fn main() {
    let (n, d) = (3, 2);
    let permutation = ReshufflePermutation::new(n, d);
    println!("reshuffle for n = {n}, d = {d}: {:?}", permutation.mapping());

    // A diagonal-entry block Toeplitz matrix, conjugated, splits into two
    // scalar Toeplitz blocks whose coefficients are the per-coordinate
    // block entries.
    let t = BlockToeplitz::from_block_fn(n, d, |j| {
        ExactMatrix::diagonal(&[
            GaussianRational::from_int(j as i64),
            GaussianRational::from_int(10 + j as i64),
        ])
    });
    let conjugated = permutation.conjugate(&t.to_dense());
    let blocks = permutation.toeplitz_blocks(&conjugated).expect("splits");
    println!("\nafter conjugation: {} scalar Toeplitz blocks of order {n}", blocks.len());
    for (k, block) in blocks.iter().enumerate() {
        assert_eq!(block.coeff(1), t.block(1).at(k, k));
        println!("coordinate {k}: {block:?}");
    }

    // Per-coordinate circulant classes embed into one coupled family,
    // with factors read off the parameters: finite alpha gives
    // (a_k, b_k) = (alpha, 1), infinity gives (1, 0).
    let alphas = [CirculantParam::zero(), CirculantParam::Infinity];
    let (a, b) = diagonal_factors(&alphas);
    println!("\nalphas (0, inf) → a = {a:?}, b = {b:?}");

    let outcome = diagonal_entries_case(n, d, &alphas).unwrap();
    for report in &outcome.reports {
        println!(
            "{} — {}",
            if report.verified { "verified" } else { "refuted" },
            report.claim
        );
    }
    assert!(outcome.all_verified());
}
