//! Schur entries: a maximal family whose factor pair has a nontrivial
//! joint kernel.
//!
//! Inside the block Toeplitz matrices with entries in a Schur algebra,
//! the members whose off-diagonal blocks are all singular (zero scalar
//! part) form a maximal commutative algebra. It does arise as a coupled
//! family — for a strictly upper factor pair — but never for a pair with
//! trivial joint kernel: the coupling constraints force both scalar
//! parts to zero, so closure of this family is not explained by the
//! joint-kernel condition.
//!
//! Run with: cargo run --example schur_families

use btalg::casestudies::{schur_case, schur_family_basis};
use btalg::subalgebras::SchurElement;
use btalg::{ExactMatrix, GaussianRational};

fn main() {
    let (n, sigma, tau) = (2, 1, 2);

    // A Schur element is invertible exactly when its scalar part is
    // nonzero; the singular ones are the strictly upper corners.
    let singular = SchurElement {
        lambda: GaussianRational::zero(),
        corner: ExactMatrix::from_int_rows(&[&[4, -7]]),
    };
    assert!(!singular.embed().is_invertible());
    let regular = SchurElement {
        lambda: GaussianRational::from_int(2),
        corner: ExactMatrix::from_int_rows(&[&[4, -7]]),
    };
    assert!(regular.embed().is_invertible());
    println!("invertibility in the Schur algebra is decided by the scalar part");

    let family = schur_family_basis(n, sigma, tau).unwrap();
    println!(
        "\nnoninvertible-entry family for n = {n}, corner {sigma}x{tau}: dimension {}",
        family.dim()
    );
    assert_eq!(family.dim(), (1 + sigma * tau) + 2 * (n - 1) * sigma * tau);

    let outcome = schur_case(n, sigma, tau).unwrap();
    println!();
    for report in &outcome.reports {
        println!(
            "{} — {}",
            if report.verified { "verified" } else { "refuted" },
            report.claim
        );
        for (label, value) in &report.dims {
            println!("    {label} = {value}");
        }
    }
    assert!(outcome.all_verified());
}
