use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::linalg::matrix::ExactMatrix;

/// A linear subspace of a coordinate space, held as its unique reduced
/// row-echelon basis.
///
/// Canonicalization at construction makes subspace equality structural
/// equality, which is the unit of comparison for every algebra-equality
/// claim in this crate.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<GaussianRational>>,
}

impl SubspaceBasis {
    /// Span of the given vectors, canonicalized.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<GaussianRational>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self {
                ambient,
                vectors: Vec::new(),
            });
        }
        let rows = vectors.len();
        let stacked = ExactMatrix::new(rows, ambient, vectors.into_iter().flatten().collect())?;
        let rref = stacked.rref();
        let kept = rref.rank();
        let vectors = (0..kept)
            .map(|r| (0..ambient).map(|c| rref.reduced.at(r, c).clone()).collect())
            .collect();
        Ok(Self { ambient, vectors })
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let vectors = (0..ambient)
            .map(|k| {
                let mut v = vec![GaussianRational::zero(); ambient];
                v[k] = GaussianRational::one();
                v
            })
            .collect();
        Self { ambient, vectors }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<GaussianRational>] {
        &self.vectors
    }

    fn check_ambient(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: len,
            });
        }
        Ok(())
    }

    /// Remainder of `vector` after reduction against the canonical basis.
    /// Zero exactly when the vector lies in the span.
    pub fn reduce(&self, vector: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        self.check_ambient(vector.len())?;
        let mut v = vector.to_vec();
        for basis_vector in &self.vectors {
            let pivot = basis_vector
                .iter()
                .position(|x| !x.is_zero())
                .expect("canonical basis rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for (vi, bi) in v.iter_mut().zip(basis_vector) {
                *vi -= &(&factor * bi);
            }
        }
        Ok(v)
    }

    pub fn contains(&self, vector: &[GaussianRational]) -> Result<bool> {
        Ok(self.reduce(vector)?.iter().all(GaussianRational::is_zero))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for v in &other.vectors {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subspace equality; structural thanks to canonicalization.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Self::from_vectors(self.ambient, vectors)
    }

    /// Intersection computed via the kernel of a stacked system: a vector
    /// lies in both spans exactly when some combination of this basis
    /// equals some combination of the other.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let k1 = self.dim();
        let k2 = other.dim();
        // Columns: coefficients on self's basis, then on other's (negated).
        let system = ExactMatrix::from_fn(self.ambient, k1 + k2, |r, c| {
            if c < k1 {
                self.vectors[c][r].clone()
            } else {
                -&other.vectors[c - k1][r]
            }
        });
        let kernel = system.kernel_basis();
        let mut vectors = Vec::new();
        for combo in kernel.vectors() {
            let mut v = vec![GaussianRational::zero(); self.ambient];
            for (i, basis_vector) in self.vectors.iter().enumerate() {
                if combo[i].is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(basis_vector) {
                    *vi += &(&combo[i] * bi);
                }
            }
            vectors.push(v);
        }
        Self::from_vectors(self.ambient, vectors)
    }

    /// Basis vectors of `self` that do not lie in `other`; candidates for
    /// extending `other` inside `self`.
    pub fn complement_candidates(&self, other: &Self) -> Result<Vec<Vec<GaussianRational>>> {
        self.check_ambient(other.ambient)?;
        let mut out = Vec::new();
        for v in &self.vectors {
            if !other.contains(v)? {
                out.push(v.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SubspaceBasis dim {} in dim {} [", self.dim(), self.ambient)?;
        for v in &self.vectors {
            let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational as G;

    fn vec_of(values: &[i64]) -> Vec<G> {
        values.iter().map(|&v| G::from_int(v)).collect()
    }

    #[test]
    fn scaling_does_not_change_the_span() {
        let a = SubspaceBasis::from_vectors(2, vec![vec_of(&[1, 0])]).unwrap();
        let b = SubspaceBasis::from_vectors(2, vec![vec_of(&[2, 0])]).unwrap();
        assert!(a.equal(&b).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = SubspaceBasis::from_vectors(3, vec![vec_of(&[1, 0, 0]), vec_of(&[0, 1, 0])]).unwrap();
        let b = SubspaceBasis::from_vectors(3, vec![vec_of(&[0, 1, 0]), vec_of(&[0, 0, 1])]).unwrap();
        let meet = a.intersect(&b).unwrap();
        let e2 = SubspaceBasis::from_vectors(3, vec![vec_of(&[0, 1, 0])]).unwrap();
        assert!(meet.equal(&e2).unwrap());
    }

    #[test]
    fn contains_scaled_vector() {
        let span = SubspaceBasis::from_vectors(2, vec![vec_of(&[1, 1])]).unwrap();
        assert!(span.contains(&vec_of(&[2, 2])).unwrap());
        assert!(!span.contains(&vec_of(&[1, 2])).unwrap());
    }

    #[test]
    fn equality_is_basis_independent() {
        let a = SubspaceBasis::from_vectors(3, vec![vec_of(&[1, 2, 0]), vec_of(&[0, 0, 1])]).unwrap();
        let b = SubspaceBasis::from_vectors(
            3,
            vec![vec_of(&[2, 4, 3]), vec_of(&[1, 2, 7]), vec_of(&[3, 6, 3])],
        )
        .unwrap();
        assert!(a.equal(&b).unwrap());
    }

    #[test]
    fn sum_joins_spans() {
        let a = SubspaceBasis::from_vectors(3, vec![vec_of(&[1, 0, 0])]).unwrap();
        let b = SubspaceBasis::from_vectors(3, vec![vec_of(&[0, 1, 0])]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = SubspaceBasis::from_vectors(2, vec![vec_of(&[1, 0])]).unwrap();
        let b = SubspaceBasis::from_vectors(3, vec![vec_of(&[1, 0, 0])]).unwrap();
        assert!(a.equal(&b).is_err());
        assert!(a.contains(&vec_of(&[1, 0, 0])).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        const AMBIENT: usize = 5;

        fn arb_subspace() -> impl Strategy<Value = SubspaceBasis> {
            proptest::collection::vec(
                proptest::collection::vec(-3i64..=3, AMBIENT),
                0..4,
            )
            .prop_map(|vectors| {
                SubspaceBasis::from_vectors(
                    AMBIENT,
                    vectors.iter().map(|v| vec_of(v)).collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            // dim U + dim W = dim(U + W) + dim(U ∩ W)
            #[test]
            fn dimension_formula(u in arb_subspace(), w in arb_subspace()) {
                let sum = u.sum(&w).unwrap();
                let meet = u.intersect(&w).unwrap();
                prop_assert_eq!(u.dim() + w.dim(), sum.dim() + meet.dim());
                prop_assert!(sum.contains_subspace(&u).unwrap());
                prop_assert!(sum.contains_subspace(&w).unwrap());
                prop_assert!(u.contains_subspace(&meet).unwrap());
                prop_assert!(w.contains_subspace(&meet).unwrap());
            }

            // canonicalization is idempotent and basis independent
            #[test]
            fn respanning_is_identity(u in arb_subspace()) {
                let respanned =
                    SubspaceBasis::from_vectors(AMBIENT, u.vectors().to_vec()).unwrap();
                prop_assert!(u.equal(&respanned).unwrap());
            }
        }
    }
}
