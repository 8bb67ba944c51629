//! Coupled families of block Toeplitz matrices.
//!
//! Fix an entry algebra and a factor pair (a, b) in its commutant. The
//! family collects the block Toeplitz matrices with blocks in the entry
//! algebra satisfying a·T_j = b·T_{j−n}. When Ker a ∩ Ker b = {0} the
//! family is closed under multiplication; the weighted block shift with
//! b below the diagonal and a in the corner is its fixed witness.
//!
//! Run with: cargo run --example coupled_families

use btalg::family::{trivial_joint_kernel, weighted_shift, CoupledFamily};
use btalg::subalgebras::AlgebraSpec;
use btalg::{ExactMatrix, GaussianRational};

fn diagonal(values: &[i64]) -> ExactMatrix {
    let entries: Vec<GaussianRational> =
        values.iter().map(|&v| GaussianRational::from_int(v)).collect();
    ExactMatrix::diagonal(&entries)
}

fn main() {
    let entry = AlgebraSpec::Diagonal { d: 2 };

    // b = 0 forces the sub-diagonal blocks to zero: the block upper
    // triangular family.
    let upper = CoupledFamily::build(
        entry.clone(),
        ExactMatrix::identity(2),
        ExactMatrix::zero(2, 2),
        3,
    )
    .unwrap();
    println!("a = I, b = 0: dimension {} (block upper triangular)", upper.dim());
    assert_eq!(upper.dim(), 6);

    // a = b = I couples each block to its wrap-around partner: block
    // circulants.
    let circulants = CoupledFamily::build(
        entry.clone(),
        ExactMatrix::identity(2),
        ExactMatrix::identity(2),
        3,
    )
    .unwrap();
    println!("a = I, b = I: dimension {} (block circulants)", circulants.dim());

    // A generic invertible diagonal pair: still n·d degrees of freedom.
    let a = diagonal(&[2, 3]);
    let b = diagonal(&[1, 5]);
    let family = CoupledFamily::build(entry.clone(), a.clone(), b.clone(), 3).unwrap();
    println!("a = diag(2,3), b = diag(1,5): dimension {}", family.dim());
    assert_eq!(family.dim(), 6);

    // The joint-kernel condition makes the family an algebra.
    assert!(trivial_joint_kernel(&a, &b).unwrap());
    assert!(family.is_closed().unwrap());
    println!("joint kernel trivial: family closed under multiplication");

    // The weighted shift is a member whenever a and b commute, and its
    // dense form shows the coupling at work.
    let shift = weighted_shift(&a, &b, 3);
    assert!(family.contains(&shift).unwrap());
    println!("\nweighted shift member (b on the subdiagonal, a in the corner):");
    println!("{:?}", shift.to_dense());

    // Degenerate pair a = b = 0: no constraint at all, and the full
    // entry-constrained block Toeplitz space is not closed.
    let degenerate = CoupledFamily::build(
        entry,
        ExactMatrix::zero(2, 2),
        ExactMatrix::zero(2, 2),
        2,
    )
    .unwrap();
    assert!(!degenerate.is_closed().unwrap());
    println!("\na = b = 0 collects everything, and closure fails as it must");
}
