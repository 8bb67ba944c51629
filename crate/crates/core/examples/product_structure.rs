//! When is a product of block Toeplitz matrices block Toeplitz again?
//!
//! The exact criterion: T·U keeps the block Toeplitz structure if and
//! only if T_p·U_{q−n} = T_{p−n}·U_q for all p, q = 1 … n−1. This
//! example shows the smallest counterexample, a structured pair where
//! the criterion holds, and the equivalence on random draws.
//!
//! Run with: cargo run --example product_structure

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use btalg::{sample, BlockToeplitz};

fn main() {
    // The smallest counterexample: one sub-diagonal and one
    // super-diagonal coefficient. The criterion compares 1·1 with 0·0.
    let t = BlockToeplitz::scalar_from_ints(2, &[0, 0, 1]);
    let u = BlockToeplitz::scalar_from_ints(2, &[1, 0, 0]);
    assert!(!t.product_condition(&u).unwrap());
    let product = t.multiply(&u).unwrap();
    assert!(product.structured.is_none());
    println!("shift-down times shift-up leaves the Toeplitz space:");
    println!("{:?}", product.dense);

    // Upper triangular pairs always pass: both products in the criterion
    // vanish identically.
    let t = BlockToeplitz::scalar_from_ints(3, &[2, -1, 3, 0, 0]);
    let u = BlockToeplitz::scalar_from_ints(3, &[1, 4, 1, 0, 0]);
    assert!(t.product_condition(&u).unwrap());
    let structured = t.multiply(&u).unwrap().structured.unwrap();
    println!("\nupper triangular times upper triangular stays Toeplitz:");
    println!("{structured:?}");

    // The criterion is exactly equivalent to the dense product being
    // block Toeplitz, on any pair whatsoever.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut toeplitz_count = 0;
    for _ in 0..200 {
        let t = sample::block_toeplitz(&mut rng, 3, 2);
        let u = sample::block_toeplitz(&mut rng, 3, 2);
        let condition = t.product_condition(&u).unwrap();
        let product = t.multiply(&u).unwrap();
        assert_eq!(condition, product.structured.is_some());
        if condition {
            toeplitz_count += 1;
        }
    }
    println!("\n200 random pairs checked; {toeplitz_count} products happened to stay Toeplitz");
}
