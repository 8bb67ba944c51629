//! Generalized circulant algebras of scalar Toeplitz matrices.
//!
//! For a parameter `alpha` (a Gaussian rational or infinity), the class
//! consists of the n×n Toeplitz matrices with `alpha·t_j = t_{j−n}` for
//! j = 1 … n−1. These are exactly the maximal multiplicatively-closed
//! classes of scalar Toeplitz matrices: closed under products, closed
//! under inverses, and recoverable from any non-diagonal member.
//!
//! Run with: cargo run --example scalar_circulants

use btalg::toeplitz::{circulant_basis, find_alpha, in_circulant, AlphaScan, CirculantParam};
use btalg::{BlockToeplitz, GaussianRational};

fn main() {
    let n = 4;

    // alpha = 0 gives lower triangular, alpha = inf upper triangular.
    for (alpha, name) in [
        (CirculantParam::zero(), "lower triangular"),
        (CirculantParam::Infinity, "upper triangular"),
        (CirculantParam::one(), "classical circulants"),
        (CirculantParam::Finite(GaussianRational::i()), "alpha = i"),
    ] {
        let basis = circulant_basis(n, &alpha);
        println!("alpha = {alpha:<4} ({name}): basis dimension {}", basis.dim());
        assert_eq!(basis.dim(), n);
    }

    // Closure under multiplication: combine two basis members of the
    // class with alpha = i and watch the product stay inside.
    let alpha = CirculantParam::Finite(GaussianRational::i());
    let basis = circulant_basis(n, &alpha);
    let t = BlockToeplitz::from_coeff_vec(n, 1, &basis.vectors()[1]).unwrap();
    let u = BlockToeplitz::from_coeff_vec(n, 1, &basis.vectors()[3]).unwrap();
    let product = t.multiply(&u).unwrap();
    let structured = product.structured.expect("products of one class stay Toeplitz");
    assert!(in_circulant(&structured, &alpha).unwrap());
    println!("\nproduct of two alpha = i members is again in the class");

    // Inverse closure: an invertible member of a class inverts inside it.
    let member = BlockToeplitz::scalar_from_ints(3, &[0, 0, 1, 2, 0]);
    assert_eq!(find_alpha(&member).unwrap(), AlphaScan::Unique(CirculantParam::zero()));
    let inverse = member.to_dense().inverse().unwrap().expect("invertible");
    let inverse = BlockToeplitz::from_dense(&inverse, 3, 1).unwrap().unwrap();
    assert!(in_circulant(&inverse, &CirculantParam::zero()).unwrap());
    println!("inverse of a lower-triangular Toeplitz matrix is lower triangular");

    // Parameter recovery: diagonal matrices belong to every class, any
    // other member pins the parameter down uniquely.
    let diagonal = BlockToeplitz::scalar_from_ints(4, &[0, 0, 0, 5, 0, 0, 0]);
    assert_eq!(find_alpha(&diagonal).unwrap(), AlphaScan::AllAlphas);
    let generic = BlockToeplitz::scalar_from_ints(3, &[1, 2, 0, 1, 1]);
    assert_eq!(find_alpha(&generic).unwrap(), AlphaScan::NoAlpha);
    println!("diagonal members match every class; generic Toeplitz matrices match none");
}
