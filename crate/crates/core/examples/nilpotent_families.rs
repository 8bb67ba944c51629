//! Nilpotent entries: a maximal commutative algebra that is not a
//! coupled family at all.
//!
//! Take the entry algebra generated by the 2×2 nilpotent matrix M (so
//! entries are a·I + b·M, invertible exactly when a ≠ 0). The block
//! Toeplitz matrices with all off-diagonal blocks singular form a
//! maximal commutative algebra, yet every candidate factor pair is
//! forced to (a·M, b·M) — and each such pair either couples nothing
//! (dimension mismatch) or admits a separating member with scalar
//! blocks. The coupled-family picture genuinely fails here.
//!
//! Run with: cargo run --example nilpotent_families

use btalg::casestudies::nilpotent_case;
use btalg::linalg::{is_nonderogatory, minimal_polynomial, poly_gcd, Poly};
use btalg::ExactMatrix;

fn main() {
    let generator = ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
    let min_poly = minimal_polynomial(&generator).unwrap();
    println!("generator M with minimal polynomial {min_poly}");
    assert!(is_nonderogatory(&generator).unwrap());

    // Invertibility of p(M) is coprimality of p with the minimal
    // polynomial: x shares a factor, x + 1 does not.
    let x = Poly::x();
    let x_plus_one = Poly::from_int_coeffs(&[1, 1]);
    assert_ne!(poly_gcd(&x, &min_poly).unwrap(), Poly::one());
    assert!(!generator.is_invertible());
    assert_eq!(poly_gcd(&x_plus_one, &min_poly).unwrap(), Poly::one());
    assert!(x_plus_one.eval_matrix(&generator).is_invertible());
    println!("p(M) invertible ⇔ gcd(p, minimal polynomial) = 1");

    for n in [2usize, 3] {
        let outcome = nilpotent_case(n).unwrap();
        println!("\n=== {} ===", outcome.label);
        for report in &outcome.reports {
            println!(
                "{} — {}",
                if report.verified { "verified" } else { "refuted" },
                report.claim
            );
            for (label, value) in &report.dims {
                println!("    {label} = {value}");
            }
            if let Some(witness) = &report.witness {
                println!("    separating witness:\n{:?}", witness.to_dense());
            }
        }
        assert!(outcome.all_verified());
    }
}
