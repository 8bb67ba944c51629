//! The catalogue of maximal commutative entry algebras and the commutant
//! machinery behind every maximality claim.
//!
//! All algebras here live inside the `d²`-dimensional space of `d×d`
//! matrices, vectorized row-major. A commutative subalgebra is maximal
//! commutative exactly when it equals its own commutant, which turns
//! each maximality claim into one kernel computation plus a subspace
//! comparison.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::linalg::{minimal_polynomial, ExactMatrix, SubspaceBasis};
use crate::sample;
use crate::toeplitz::{circulant_basis, BlockToeplitz, CirculantParam};

/// Description of an entry algebra from the catalogue.
#[derive(Clone, PartialEq, Debug)]
pub enum AlgebraSpec {
    /// Diagonal matrices of size `d`.
    Diagonal { d: usize },
    /// Generalized circulant algebra inside the `n×n` scalar Toeplitz
    /// matrices.
    Circulant { n: usize, alpha: CirculantParam },
    /// Matrices `[[λI_σ, X], [0, λI_τ]]` with an arbitrary `σ×τ` corner.
    Schur { sigma: usize, tau: usize },
    /// The algebra generated by a single matrix; maximal commutative when
    /// the generator is nonderogatory.
    Polynomial { generator: ExactMatrix },
    /// An explicit span of `d×d` matrices.
    Explicit { d: usize, basis: Vec<ExactMatrix> },
}

impl AlgebraSpec {
    /// Matrix size of the members.
    pub fn matrix_size(&self) -> usize {
        match self {
            Self::Diagonal { d } => *d,
            Self::Circulant { n, .. } => *n,
            Self::Schur { sigma, tau } => sigma + tau,
            Self::Polynomial { generator } => generator.rows(),
            Self::Explicit { d, .. } => *d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Diagonal { d } | Self::Explicit { d, .. } if *d == 0 => {
                Err(Error::Invalid("matrix size must be positive".into()))
            }
            Self::Circulant { n: 0, .. } => {
                Err(Error::Invalid("circulant order must be positive".into()))
            }
            Self::Schur { sigma, tau } if *sigma == 0 || *tau == 0 => {
                Err(Error::Invalid("schur parameters must be positive".into()))
            }
            Self::Polynomial { generator } if !generator.is_square() => Err(Error::NotSquare {
                rows: generator.rows(),
                cols: generator.cols(),
            }),
            Self::Explicit { d, basis } => {
                for b in basis {
                    if b.rows() != *d || b.cols() != *d {
                        return Err(Error::Shape(format!(
                            "explicit basis members must be {d}x{d}, got {}x{}",
                            b.rows(),
                            b.cols()
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Element of a Schur algebra, determined by its scalar and its corner.
#[derive(Clone, PartialEq, Debug)]
pub struct SchurElement {
    pub lambda: GaussianRational,
    /// The `σ×τ` upper-right corner.
    pub corner: ExactMatrix,
}

impl SchurElement {
    /// The dense form `[[λI_σ, X], [0, λI_τ]]`.
    pub fn embed(&self) -> ExactMatrix {
        let (sigma, tau) = (self.corner.rows(), self.corner.cols());
        let d = sigma + tau;
        ExactMatrix::from_fn(d, d, |r, c| {
            if r < sigma && c >= sigma {
                self.corner.at(r, c - sigma).clone()
            } else if r == c {
                self.lambda.clone()
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Invertible exactly when the scalar is nonzero.
    pub fn is_invertible(&self) -> bool {
        !self.lambda.is_zero()
    }
}

/// Read a `d×d` matrix as a Schur element, if it has the right shape.
pub fn schur_decompose(m: &ExactMatrix, sigma: usize, tau: usize) -> Option<SchurElement> {
    if m.rows() != sigma + tau || m.cols() != sigma + tau {
        return None;
    }
    let lambda = m.at(0, 0).clone();
    let corner = ExactMatrix::from_fn(sigma, tau, |r, c| m.at(r, sigma + c).clone());
    let candidate = SchurElement {
        lambda,
        corner,
    };
    if candidate.embed() == *m {
        Some(candidate)
    } else {
        None
    }
}

/// Canonical basis of the algebra described by `spec`, inside the
/// `d²`-dimensional matrix space.
pub fn algebra_basis(spec: &AlgebraSpec) -> Result<SubspaceBasis> {
    spec.validate()?;
    let d = spec.matrix_size();
    let ambient = d * d;
    let members: Vec<ExactMatrix> = match spec {
        AlgebraSpec::Diagonal { d } => (0..*d).map(|k| ExactMatrix::unit(*d, *d, k, k)).collect(),
        AlgebraSpec::Circulant { n, alpha } => circulant_basis(*n, alpha)
            .vectors()
            .iter()
            .map(|v| {
                BlockToeplitz::from_coeff_vec(*n, 1, v)
                    .expect("coefficient length")
                    .to_dense()
            })
            .collect(),
        AlgebraSpec::Schur { sigma, tau } => {
            let mut members = vec![ExactMatrix::identity(d)];
            for r in 0..*sigma {
                for c in 0..*tau {
                    members.push(
                        SchurElement {
                            lambda: GaussianRational::zero(),
                            corner: ExactMatrix::unit(*sigma, *tau, r, c),
                        }
                        .embed(),
                    );
                }
            }
            members
        }
        AlgebraSpec::Polynomial { generator } => {
            let degree = minimal_polynomial(generator)?
                .degree()
                .expect("minimal polynomial of a matrix is nonzero");
            (0..degree).map(|k| generator.pow(k)).collect()
        }
        AlgebraSpec::Explicit { basis, .. } => basis.clone(),
    };
    SubspaceBasis::from_vectors(ambient, members.iter().map(ExactMatrix::to_vec).collect())
}

/// Reshape a vectorized member of a matrix-space subspace.
pub fn as_matrix(vector: &[GaussianRational], d: usize) -> ExactMatrix {
    ExactMatrix::from_vec(d, d, vector).expect("vector length d²")
}

/// The commutant inside the full matrix algebra: all `d×d` matrices
/// commuting with every member of the span, computed as one stacked
/// kernel over the commutation constraints.
pub fn commutant(basis: &SubspaceBasis, d: usize) -> Result<SubspaceBasis> {
    if basis.ambient() != d * d {
        return Err(Error::AmbientMismatch {
            left: basis.ambient(),
            right: d * d,
        });
    }
    let ambient = d * d;
    if basis.dim() == 0 {
        return Ok(SubspaceBasis::full(ambient));
    }
    // Rows: for each basis member B, the map X ↦ XB − BX applied to the
    // unit matrices; the kernel of the stack is the commutant.
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for member in basis.vectors() {
        let b = as_matrix(member, d);
        let mut columns: Vec<Vec<GaussianRational>> = Vec::with_capacity(ambient);
        for unit_index in 0..ambient {
            let unit = ExactMatrix::unit(d, d, unit_index / d, unit_index % d);
            let image = &(&unit * &b) - &(&b * &unit);
            columns.push(image.to_vec());
        }
        for r in 0..ambient {
            let row: Vec<GaussianRational> = columns.iter().map(|col| col[r].clone()).collect();
            if row.iter().all(GaussianRational::is_zero) {
                continue;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(SubspaceBasis::full(ambient));
    }
    let count = rows.len();
    let system = ExactMatrix::new(count, ambient, rows.into_iter().flatten().collect())?;
    Ok(system.kernel_basis())
}

/// Check that all pairs of basis members commute; returns the offending
/// pair otherwise.
pub fn commutativity_violation(basis: &SubspaceBasis, d: usize) -> Option<(usize, usize)> {
    let members: Vec<ExactMatrix> = basis.vectors().iter().map(|v| as_matrix(v, d)).collect();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if &members[i] * &members[j] != &members[j] * &members[i] {
                return Some((i, j));
            }
        }
    }
    None
}

/// A commutative span is maximal commutative exactly when it equals its
/// commutant. Refuses non-commutative input.
pub fn is_maximal_commutative(basis: &SubspaceBasis, d: usize) -> Result<bool> {
    if let Some((i, j)) = commutativity_violation(basis, d) {
        return Err(Error::NotCommutative(format!(
            "basis members {i} and {j} do not commute"
        )));
    }
    let commutant = commutant(basis, d)?;
    commutant.equal(basis)
}

/// Outcome of a randomized inverse-closedness check.
#[derive(Clone, Debug)]
pub enum InverseClosure {
    Closed { tested: usize },
    Violated { member: ExactMatrix, inverse: ExactMatrix },
}

impl InverseClosure {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Closed { .. })
    }
}

/// Draw random members of the span, and for every invertible one check
/// that its exact inverse lies back in the span. Stops with a concrete
/// witness on the first failure.
pub fn check_inverse_closed(
    basis: &SubspaceBasis,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<InverseClosure> {
    if basis.ambient() != d * d {
        return Err(Error::AmbientMismatch {
            left: basis.ambient(),
            right: d * d,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < samples && attempts < samples * 50 {
        attempts += 1;
        let member = as_matrix(&sample::member(&mut rng, basis), d);
        let Some(inverse) = member.inverse()? else {
            continue;
        };
        if !basis.contains(&inverse.to_vec())? {
            return Ok(InverseClosure::Violated { member, inverse });
        }
        tested += 1;
    }
    Ok(InverseClosure::Closed { tested })
}
