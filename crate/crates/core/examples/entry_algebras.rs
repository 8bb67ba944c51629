//! The catalogue of maximal commutative entry algebras.
//!
//! A commutative subalgebra of the d×d matrices is maximal commutative
//! exactly when it equals its own commutant. That turns each maximality
//! claim into one exact kernel computation — and it implies inverse
//! closedness: the inverse of a member commutes with everything the
//! member commutes with.
//!
//! Run with: cargo run --example entry_algebras

use btalg::linalg::{companion_matrix, Poly};
use btalg::subalgebras::{
    algebra_basis, check_inverse_closed, commutant, is_maximal_commutative, AlgebraSpec,
};
use btalg::toeplitz::CirculantParam;
use btalg::ExactMatrix;

fn main() {
    let catalogue = vec![
        ("diagonal 3x3", AlgebraSpec::Diagonal { d: 3 }),
        (
            "circulants in the 3x3 Toeplitz matrices",
            AlgebraSpec::Circulant { n: 3, alpha: CirculantParam::one() },
        ),
        ("schur algebra, corner 1x2", AlgebraSpec::Schur { sigma: 1, tau: 2 }),
        (
            "polynomials in a companion matrix",
            AlgebraSpec::Polynomial {
                generator: companion_matrix(&Poly::from_int_coeffs(&[-1, -1, 1])).unwrap(),
            },
        ),
    ];

    for (name, spec) in catalogue {
        let d = spec.matrix_size();
        let basis = algebra_basis(&spec).unwrap();
        let comm = commutant(&basis, d).unwrap();
        let maximal = is_maximal_commutative(&basis, d).unwrap();
        let inverse_closed = check_inverse_closed(&basis, d, 15, 42).unwrap().passed();
        println!(
            "{name}: dim {}, commutant dim {}, maximal commutative: {maximal}, inverse closed: {inverse_closed}",
            basis.dim(),
            comm.dim()
        );
        assert!(maximal && inverse_closed);
    }

    // A span that is commutative but too small: its commutant is strictly
    // larger, so it cannot be maximal.
    let d = 3;
    let small = btalg::SubspaceBasis::from_vectors(
        d * d,
        vec![
            ExactMatrix::identity(d).to_vec(),
            ExactMatrix::unit(d, d, 0, 0).to_vec(),
        ],
    )
    .unwrap();
    let comm = commutant(&small, d).unwrap();
    assert!(!is_maximal_commutative(&small, d).unwrap());
    println!(
        "\nspan{{I, E11}} in the 3x3 matrices: dim {} but commutant dim {} — not maximal",
        small.dim(),
        comm.dim()
    );
}
