//! Coupled families of block Toeplitz matrices and their maximality
//! certificates.
//!
//! Fix an entry algebra `B` of `d×d` matrices and a factor pair `(a, b)`
//! in its commutant. The coupled family consists of all block Toeplitz
//! matrices whose blocks lie in `B` and satisfy
//!
//! ```text
//! a·T_j = b·T_{j−n}        for j = 1 … n−1,
//! ```
//!
//! i.e. each sub-diagonal block is tied to its wrap-around partner above
//! the diagonal. When `Ker a ∩ Ker b = {0}` the family is closed under
//! multiplication; when the entry algebra is maximal commutative the
//! family is a maximal commutative algebra inside the block Toeplitz
//! space. Both facts are machine-checked here, the latter through a
//! relative commutant that collapses onto the family exactly in the
//! maximal case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::linalg::{ExactMatrix, SubspaceBasis};
use crate::sample;
use crate::subalgebras::{algebra_basis, as_matrix, AlgebraSpec};
use crate::toeplitz::{coeff_ambient, BlockToeplitz};

/// `Ker a ∩ Ker b = {0}`, decided by one stacked kernel computation.
pub fn trivial_joint_kernel(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Shape(format!(
            "factor shapes differ: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let stacked = a.vstack(b)?;
    Ok(stacked.kernel_basis().dim() == 0)
}

/// The joint-annihilator implication: under a trivial joint kernel,
/// `a·t = b·t = 0` forces `t = 0`. Returns whether the implication holds
/// for this particular triple (vacuously true when some product is
/// nonzero).
pub fn joint_annihilator_forces_zero(
    a: &ExactMatrix,
    b: &ExactMatrix,
    t: &ExactMatrix,
) -> Result<bool> {
    if a.cols() != t.rows() || b.cols() != t.rows() {
        return Err(Error::Shape("annihilator test needs compatible shapes".into()));
    }
    if (a * t).is_zero() && (b * t).is_zero() {
        Ok(t.is_zero())
    } else {
        Ok(true)
    }
}

/// A coupled family, together with the exact basis of its solution space
/// inside the `(2n−1)d²`-dimensional block coefficient space.
#[derive(Clone, Debug)]
pub struct CoupledFamily {
    pub entry: AlgebraSpec,
    pub entry_basis: SubspaceBasis,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub n: usize,
    pub basis: SubspaceBasis,
}

impl CoupledFamily {
    /// Solve the linear constraints defining the family: every block in
    /// the entry algebra, plus the coupling `a·T_j = b·T_{j−n}` for
    /// `j = 1 … n−1` (the central block is only constrained to the entry
    /// algebra).
    ///
    /// Errors when `a` or `b` fails to commute with the entry algebra.
    pub fn build(entry: AlgebraSpec, a: ExactMatrix, b: ExactMatrix, n: usize) -> Result<Self> {
        entry.validate()?;
        if n == 0 {
            return Err(Error::Invalid("block order must be positive".into()));
        }
        let d = entry.matrix_size();
        for (name, m) in [("a", &a), ("b", &b)] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::Shape(format!(
                    "factor {name} must be {d}x{d}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let entry_basis = algebra_basis(&entry)?;
        for (index, member) in entry_basis.vectors().iter().enumerate() {
            let e = as_matrix(member, d);
            if (&a * &e) != (&e * &a) {
                return Err(Error::OutsideCommutant(format!(
                    "factor a does not commute with entry basis member {index}"
                )));
            }
            if (&b * &e) != (&e * &b) {
                return Err(Error::OutsideCommutant(format!(
                    "factor b does not commute with entry basis member {index}"
                )));
            }
        }

        // Unknowns: one coefficient per (block index, entry basis member).
        let entry_dim = entry_basis.dim();
        let unknowns = (2 * n - 1) * entry_dim;
        let scaled_a: Vec<ExactMatrix> = entry_basis
            .vectors()
            .iter()
            .map(|v| &a * &as_matrix(v, d))
            .collect();
        let scaled_b: Vec<ExactMatrix> = entry_basis
            .vectors()
            .iter()
            .map(|v| &b * &as_matrix(v, d))
            .collect();
        let offset = |j: isize| (j + n as isize - 1) as usize;

        // One block of d² constraint rows per coupling index j.
        let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
        for j in 1..n as isize {
            for r in 0..d {
                for c in 0..d {
                    let mut row = vec![GaussianRational::zero(); unknowns];
                    for k in 0..entry_dim {
                        row[offset(j) * entry_dim + k] = scaled_a[k].at(r, c).clone();
                        row[offset(j - n as isize) * entry_dim + k] = -scaled_b[k].at(r, c);
                    }
                    rows.push(row);
                }
            }
        }

        let coefficient_solutions = if rows.is_empty() {
            SubspaceBasis::full(unknowns)
        } else {
            let count = rows.len();
            ExactMatrix::new(count, unknowns, rows.into_iter().flatten().collect())?
                .kernel_basis()
        };

        // Map coefficient solutions into the block coefficient space.
        let ambient = coeff_ambient(n, d);
        let mut vectors = Vec::with_capacity(coefficient_solutions.dim());
        for solution in coefficient_solutions.vectors() {
            let bt = BlockToeplitz::from_block_fn(n, d, |j| {
                let mut block = ExactMatrix::zero(d, d);
                for k in 0..entry_dim {
                    let coeff = &solution[offset(j) * entry_dim + k];
                    if coeff.is_zero() {
                        continue;
                    }
                    block = &block + &as_matrix(&entry_basis.vectors()[k], d).scale(coeff);
                }
                block
            });
            vectors.push(bt.coeff_vec());
        }
        let basis = SubspaceBasis::from_vectors(ambient, vectors)?;
        Ok(Self { entry, entry_basis, a, b, n, basis })
    }

    pub fn block_size(&self) -> usize {
        self.entry.matrix_size()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn contains(&self, t: &BlockToeplitz) -> Result<bool> {
        self.basis.contains(&t.coeff_vec())
    }

    pub fn basis_members(&self) -> Vec<BlockToeplitz> {
        let d = self.block_size();
        self.basis
            .vectors()
            .iter()
            .map(|v| BlockToeplitz::from_coeff_vec(self.n, d, v).expect("ambient length"))
            .collect()
    }

    /// First pair of basis members violating closure, if any: the failure
    /// is either a product leaving the block Toeplitz space, a product
    /// leaving the family span, or a non-commuting pair.
    pub fn closure_violation(&self) -> Result<Option<ClosureViolation>> {
        span_closure_violation(self.n, self.block_size(), &self.basis)
    }

    /// Whether the family is a commutative algebra: all pairwise products
    /// stay block Toeplitz, stay in the span, and commute.
    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.closure_violation()?.is_none())
    }

    /// The family's relative commutant inside the block Toeplitz space.
    pub fn relative_commutant(&self) -> Result<SubspaceBasis> {
        relative_commutant(self.n, self.block_size(), &self.basis)
    }

    /// Decide maximal commutativity of the family inside the block
    /// Toeplitz space.
    ///
    /// If the relative commutant collapses onto the family the verdict is
    /// `Maximal`: any commutative algebra of block Toeplitz matrices
    /// containing the family commutes with it and multiplies it
    /// Toeplitz-stably, hence sits inside the commutant. Otherwise a
    /// bounded search tries to grow a strictly larger commutative algebra
    /// from a commutant candidate; a stabilized extension is re-verified
    /// and reported as a witness, and absence of a witness is reported
    /// `Inconclusive`, never `Maximal`.
    pub fn maximality(&self, search_depth: usize, seed: u64) -> Result<MaximalityReport> {
        if let Some(violation) = self.closure_violation()? {
            return Err(Error::NotClosed(format!(
                "product of basis members {} and {} {}",
                violation.left, violation.right, violation.reason
            )));
        }
        let commutant = self.relative_commutant()?;
        let family_dim = self.dim();
        let commutant_dim = commutant.dim();
        if commutant.equal(&self.basis)? {
            return Ok(MaximalityReport {
                verdict: MaximalityVerdict::Maximal,
                family_dim,
                commutant_dim,
            });
        }

        let d = self.block_size();
        let mut candidates = commutant.complement_candidates(&self.basis)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let combo = sample::member(&mut rng, &commutant);
            if !self.basis.contains(&combo)? {
                candidates.push(combo);
            }
        }
        for candidate in candidates {
            let seeded = self
                .basis
                .sum(&SubspaceBasis::from_vectors(self.basis.ambient(), vec![candidate.clone()])?)?;
            if let Some(extension) = grow_commutative_toeplitz_algebra(self.n, d, &seeded, search_depth)? {
                if extension.dim() > family_dim && extension.contains_subspace(&self.basis)? {
                    let witness = BlockToeplitz::from_coeff_vec(self.n, d, &candidate)?;
                    return Ok(MaximalityReport {
                        verdict: MaximalityVerdict::NotMaximal {
                            witness,
                            extension_dim: extension.dim(),
                        },
                        family_dim,
                        commutant_dim,
                    });
                }
            }
        }
        Ok(MaximalityReport {
            verdict: MaximalityVerdict::Inconclusive { commutant },
            family_dim,
            commutant_dim,
        })
    }
}

/// Check that a span of block coefficient vectors is a commutative
/// algebra of block Toeplitz matrices: every pair of basis members must
/// pass the product-structure criterion, multiply back into the span,
/// and commute.
pub fn span_closure_violation(
    n: usize,
    d: usize,
    span: &SubspaceBasis,
) -> Result<Option<ClosureViolation>> {
    if span.ambient() != coeff_ambient(n, d) {
        return Err(Error::AmbientMismatch {
            left: span.ambient(),
            right: coeff_ambient(n, d),
        });
    }
    let members: Vec<BlockToeplitz> = span
        .vectors()
        .iter()
        .map(|v| BlockToeplitz::from_coeff_vec(n, d, v).expect("ambient length"))
        .collect();
    for i in 0..members.len() {
        for j in i..members.len() {
            let condition = members[i].product_condition(&members[j])?;
            let forward = members[i].multiply(&members[j])?;
            debug_assert_eq!(condition, forward.structured.is_some());
            if i != j {
                let backward = members[j].multiply(&members[i])?;
                if forward.dense != backward.dense {
                    return Ok(Some(ClosureViolation {
                        left: i,
                        right: j,
                        reason: ClosureFailure::NotCommuting,
                    }));
                }
            }
            let Some(structured) = forward.structured else {
                return Ok(Some(ClosureViolation {
                    left: i,
                    right: j,
                    reason: ClosureFailure::ProductNotToeplitz,
                }));
            };
            if !span.contains(&structured.coeff_vec())? {
                return Ok(Some(ClosureViolation {
                    left: i,
                    right: j,
                    reason: ClosureFailure::ProductOutsideFamily,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub left: usize,
    pub right: usize,
    pub reason: ClosureFailure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureFailure {
    ProductNotToeplitz,
    ProductOutsideFamily,
    NotCommuting,
}

impl std::fmt::Display for ClosureFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ProductNotToeplitz => write!(f, "leaves the block Toeplitz space"),
            Self::ProductOutsideFamily => write!(f, "leaves the family span"),
            Self::NotCommuting => write!(f, "does not commute"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub verdict: MaximalityVerdict,
    pub family_dim: usize,
    pub commutant_dim: usize,
}

#[derive(Clone, Debug)]
pub enum MaximalityVerdict {
    Maximal,
    NotMaximal {
        witness: BlockToeplitz,
        extension_dim: usize,
    },
    Inconclusive {
        commutant: SubspaceBasis,
    },
}

impl MaximalityVerdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Self::Maximal)
    }
}

/// The weighted block cyclic shift: `T_1 = b`, `T_{1−n} = a`, all other
/// blocks zero — dense form has `a` in the top-right corner block and `b`
/// along the first block subdiagonal. It belongs to the coupled family
/// whenever `a·b = b·a` (and both factors lie in the entry algebra).
pub fn weighted_shift(a: &ExactMatrix, b: &ExactMatrix, n: usize) -> BlockToeplitz {
    assert!(a.is_square() && a.rows() == b.rows() && b.is_square(), "factor shapes");
    let d = a.rows();
    BlockToeplitz::from_block_fn(n, d, |j| {
        if j == 1 && n > 1 {
            b.clone()
        } else if j == 1 - n as isize && n > 1 {
            a.clone()
        } else {
            ExactMatrix::zero(d, d)
        }
    })
}

/// Embed a single entry matrix as a block-diagonal-constant block
/// Toeplitz matrix (`T_0 = u`, other blocks zero).
pub fn diagonal_embedding(u: &ExactMatrix, n: usize) -> BlockToeplitz {
    assert!(u.is_square(), "entry must be square");
    let d = u.rows();
    BlockToeplitz::from_block_fn(n, d, |j| {
        if j == 0 {
            u.clone()
        } else {
            ExactMatrix::zero(d, d)
        }
    })
}

// row r of `m·(row c)` picked out by a left unit factor: E_rc·M has row c
// of M moved to row r, all else zero.
fn unit_times(d: usize, r: usize, c: usize, m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(d, d, |i, j| {
        if i == r {
            m.at(c, j).clone()
        } else {
            GaussianRational::zero()
        }
    })
}

// M·E_rc has column r of M moved to column c, all else zero.
fn times_unit(d: usize, r: usize, c: usize, m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(d, d, |i, j| {
        if j == c {
            m.at(i, r).clone()
        } else {
            GaussianRational::zero()
        }
    })
}

/// The space of block Toeplitz matrices `X` that commute with every
/// member of `family` and keep every product `X·F` block Toeplitz. Both
/// conditions are linear in `X`, so the space is one stacked kernel; it
/// always contains the family itself, and equality is exactly the
/// maximality certificate.
pub fn relative_commutant(
    n: usize,
    d: usize,
    family: &SubspaceBasis,
) -> Result<SubspaceBasis> {
    let ambient = coeff_ambient(n, d);
    if family.ambient() != ambient {
        return Err(Error::AmbientMismatch { left: family.ambient(), right: ambient });
    }
    let members: Vec<BlockToeplitz> = family
        .vectors()
        .iter()
        .map(|v| BlockToeplitz::from_coeff_vec(n, d, v).expect("ambient length"))
        .collect();

    // Solution space, intersected member by member so that later
    // constraint systems act on an already-small space.
    let mut solution = SubspaceBasis::full(ambient);
    let n_i = n as isize;
    for f in &members {
        // Constraint images of each unit coefficient vector. A unit puts a
        // single entry E_rc into a single block X_{j0}, which keeps the
        // block products below cheap.
        let mut columns: Vec<Vec<GaussianRational>> = Vec::with_capacity(ambient);
        for j0 in -(n_i - 1)..=(n_i - 1) {
            for r in 0..d {
                for c in 0..d {
                    let mut column: Vec<GaussianRational> = Vec::new();
                    // Commutation: block (p, q) of X·F − F·X.
                    for p in 0..n_i {
                        for q in 0..n_i {
                            let k_left = p - j0;
                            let xf = if (0..n_i).contains(&k_left) {
                                Some(unit_times(d, r, c, f.block(k_left - q)))
                            } else {
                                None
                            };
                            let k_right = q + j0;
                            let fx = if (0..n_i).contains(&k_right) {
                                Some(times_unit(d, r, c, f.block(p - k_right)))
                            } else {
                                None
                            };
                            let block = match (xf, fx) {
                                (Some(l), Some(r2)) => &l - &r2,
                                (Some(l), None) => l,
                                (None, Some(r2)) => -&r2,
                                (None, None) => ExactMatrix::zero(d, d),
                            };
                            column.extend(block.to_vec());
                        }
                    }
                    // Toeplitz stability of X·F: X_p F_{q−n} = X_{p−n} F_q.
                    for p in 1..n_i {
                        for q in 1..n_i {
                            let first = if p == j0 {
                                Some(unit_times(d, r, c, f.block(q - n_i)))
                            } else {
                                None
                            };
                            let second = if p - n_i == j0 {
                                Some(unit_times(d, r, c, f.block(q)))
                            } else {
                                None
                            };
                            let block = match (first, second) {
                                (Some(l), Some(r2)) => &l - &r2,
                                (Some(l), None) => l,
                                (None, Some(r2)) => -&r2,
                                (None, None) => ExactMatrix::zero(d, d),
                            };
                            column.extend(block.to_vec());
                        }
                    }
                    columns.push(column);
                }
            }
        }
        let output_len = columns[0].len();
        let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
        for out in 0..output_len {
            let row: Vec<GaussianRational> = columns.iter().map(|col| col[out].clone()).collect();
            if row.iter().all(GaussianRational::is_zero) {
                continue;
            }
            rows.push(row);
        }
        if rows.is_empty() {
            continue;
        }
        // Restrict the constraints to the current solution space and
        // intersect.
        let basis_vectors = solution.vectors();
        let restricted = ExactMatrix::from_fn(rows.len(), solution.dim(), |ri, ci| {
            let mut acc = GaussianRational::zero();
            for (coord, value) in basis_vectors[ci].iter().enumerate() {
                if value.is_zero() || rows[ri][coord].is_zero() {
                    continue;
                }
                acc += &(&rows[ri][coord] * value);
            }
            acc
        });
        let kernel = restricted.kernel_basis();
        let mut new_vectors = Vec::with_capacity(kernel.dim());
        for combo in kernel.vectors() {
            let mut v = vec![GaussianRational::zero(); ambient];
            for (ci, coeff) in combo.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(&basis_vectors[ci]) {
                    *vi += &(coeff * bi);
                }
            }
            new_vectors.push(v);
        }
        solution = SubspaceBasis::from_vectors(ambient, new_vectors)?;
        if solution.dim() == 0 {
            break;
        }
    }
    Ok(solution)
}

/// Grow the span into an algebra by repeatedly adjoining pairwise
/// products, up to `max_rounds` rounds. Returns the stabilized span, or
/// `Ok(None)` when a product leaves the block Toeplitz space, a pair
/// fails to commute, or the span keeps growing.
pub fn grow_commutative_toeplitz_algebra(
    n: usize,
    d: usize,
    start: &SubspaceBasis,
    max_rounds: usize,
) -> Result<Option<SubspaceBasis>> {
    let ambient = coeff_ambient(n, d);
    if start.ambient() != ambient {
        return Err(Error::AmbientMismatch { left: start.ambient(), right: ambient });
    }
    let mut span = start.clone();
    for _ in 0..max_rounds {
        let members: Vec<BlockToeplitz> = span
            .vectors()
            .iter()
            .map(|v| BlockToeplitz::from_coeff_vec(n, d, v).expect("ambient length"))
            .collect();
        let mut products = Vec::new();
        for i in 0..members.len() {
            for j in i..members.len() {
                let forward = members[i].multiply(&members[j])?;
                if i != j && forward.dense != members[j].multiply(&members[i])?.dense {
                    return Ok(None);
                }
                let Some(structured) = forward.structured else {
                    return Ok(None);
                };
                products.push(structured.coeff_vec());
            }
        }
        let grown = span.sum(&SubspaceBasis::from_vectors(ambient, products)?)?;
        if grown.equal(&span)? {
            return Ok(Some(span));
        }
        span = grown;
    }
    Ok(None)
}

/// Outcome of deriving a factor pair from a member with an invertible
/// off-diagonal block.
#[derive(Clone, Debug)]
pub enum DerivedCoupling {
    Derived {
        a: ExactMatrix,
        b: ExactMatrix,
        /// The block index whose invertibility drove the derivation.
        pivot: isize,
    },
    NoInvertibleEntry,
}

/// Derive a factor pair from a block Toeplitz matrix with an invertible
/// block at some nonzero index `r`.
///
/// For `r > 0` the multiplicativity constraints force every member `U` of
/// an algebra containing `t` to satisfy `U_{j−n} = T_r⁻¹·T_{r−n}·U_j`, so
/// the pair is `(a, b) = (T_r⁻¹·T_{r−n}, I)`; for `r < 0` the mirror
/// derivation gives `(I, T_r⁻¹·T_{r+n})`. Scans positive indices in
/// ascending order first, then negative ones.
pub fn derive_coupling(t: &BlockToeplitz, entry: &AlgebraSpec) -> Result<DerivedCoupling> {
    entry.validate()?;
    let d = entry.matrix_size();
    if t.d() != d {
        return Err(Error::Shape(format!(
            "block size {} does not match entry algebra size {d}",
            t.d()
        )));
    }
    let entry_span = algebra_basis(entry)?;
    for j in -(t.n() as isize - 1)..=(t.n() as isize - 1) {
        if !entry_span.contains(&t.block(j).to_vec())? {
            return Err(Error::Invalid(format!(
                "block at index {j} lies outside the entry algebra"
            )));
        }
    }
    let n = t.n() as isize;
    let positive = (1..n).collect::<Vec<_>>();
    let negative = (1..n).map(|r| -r).collect::<Vec<_>>();
    for r in positive.into_iter().chain(negative) {
        let Some(inverse) = t.block(r).inverse()? else {
            continue;
        };
        if r > 0 {
            let a = &inverse * t.block(r - n);
            return Ok(DerivedCoupling::Derived {
                a,
                b: ExactMatrix::identity(d),
                pivot: r,
            });
        }
        let b = &inverse * t.block(r + n);
        return Ok(DerivedCoupling::Derived {
            a: ExactMatrix::identity(d),
            b,
            pivot: r,
        });
    }
    Ok(DerivedCoupling::NoInvertibleEntry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational as G;
    use crate::toeplitz::CirculantParam;

    fn diagonal(values: &[i64]) -> ExactMatrix {
        let entries: Vec<G> = values.iter().map(|&v| G::from_int(v)).collect();
        ExactMatrix::diagonal(&entries)
    }

    #[test]
    fn joint_kernel_examples() {
        let d2 = 2;
        assert!(trivial_joint_kernel(&ExactMatrix::identity(d2), &ExactMatrix::zero(d2, d2)).unwrap());
        assert!(!trivial_joint_kernel(&ExactMatrix::zero(d2, d2), &ExactMatrix::zero(d2, d2)).unwrap());
        let e12 = ExactMatrix::unit(2, 2, 0, 1);
        assert!(!trivial_joint_kernel(&e12, &e12).unwrap());
    }

    #[test]
    fn joint_annihilator_examples() {
        let identity = ExactMatrix::identity(2);
        let zero = ExactMatrix::zero(2, 2);
        // trivial joint kernel: a·t = b·t = 0 pins t to zero
        assert!(joint_annihilator_forces_zero(&identity, &zero, &zero).unwrap());
        // a = b = E_12, t = E_11: annihilated but nonzero, implication fails
        let e12 = ExactMatrix::unit(2, 2, 0, 1);
        let e11 = ExactMatrix::unit(2, 2, 0, 0);
        assert!(!joint_annihilator_forces_zero(&e12, &e12, &e11).unwrap());
        // nonzero products make the implication vacuous
        assert!(joint_annihilator_forces_zero(&identity, &identity, &e11).unwrap());
    }

    #[test]
    fn family_dimension_upper_triangular() {
        // b = 0 forces every positive-index block to vanish.
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::identity(2),
            ExactMatrix::zero(2, 2),
            3,
        )
        .unwrap();
        assert_eq!(family.dim(), 6);
        for member in family.basis_members() {
            assert!(member.block(1).is_zero());
            assert!(member.block(2).is_zero());
        }
    }

    #[test]
    fn family_dimension_block_circulants() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            3,
        )
        .unwrap();
        assert_eq!(family.dim(), 6);
        for member in family.basis_members() {
            assert_eq!(member.block(1), member.block(-2));
            assert_eq!(member.block(2), member.block(-1));
        }
    }

    #[test]
    fn family_dimension_generic_invertible_diagonal() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            diagonal(&[2, 3]),
            diagonal(&[1, 5]),
            3,
        )
        .unwrap();
        assert_eq!(family.dim(), 6);
    }

    #[test]
    fn factors_outside_the_commutant_are_rejected() {
        let err = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::unit(2, 2, 0, 1),
            ExactMatrix::identity(2),
            2,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OutsideCommutant(_)));
    }

    #[test]
    fn closure_holds_under_trivial_joint_kernel() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            diagonal(&[2, 3]),
            diagonal(&[1, 5]),
            3,
        )
        .unwrap();
        assert!(family.is_closed().unwrap());
    }

    #[test]
    fn degenerate_zero_factors_fail_closure() {
        // a = b = 0 puts no constraint at all; the full block Toeplitz
        // space is not multiplicatively closed for n ≥ 2.
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::zero(2, 2),
            ExactMatrix::zero(2, 2),
            2,
        )
        .unwrap();
        assert_eq!(family.dim(), 6);
        let violation = family.closure_violation().unwrap().unwrap();
        assert!(matches!(
            violation.reason,
            ClosureFailure::ProductNotToeplitz | ClosureFailure::NotCommuting
        ));
    }

    #[test]
    fn weighted_shift_patterns() {
        let a = diagonal(&[1, 2]);
        let b = diagonal(&[3, 4]);
        let shift = weighted_shift(&a, &b, 3);
        assert_eq!(shift.block(1), &b);
        assert_eq!(shift.block(-2), &a);
        assert!(shift.block(0).is_zero());
        assert!(shift.block(2).is_zero());
        assert!(shift.block(-1).is_zero());

        let shift2 = weighted_shift(&a, &b, 2);
        assert_eq!(shift2.block(1), &b);
        assert_eq!(shift2.block(-1), &a);
    }

    #[test]
    fn unweighted_shift_cubes_to_identity() {
        let identity = ExactMatrix::identity(2);
        let shift = weighted_shift(&identity, &identity, 3);
        let dense = shift.to_dense();
        let cube = &(&dense * &dense) * &dense;
        assert!(cube.is_identity());
    }

    #[test]
    fn weighted_shift_belongs_to_the_family() {
        let a = diagonal(&[2, 3]);
        let b = diagonal(&[1, 5]);
        let family =
            CoupledFamily::build(AlgebraSpec::Diagonal { d: 2 }, a.clone(), b.clone(), 3).unwrap();
        assert!(family.contains(&weighted_shift(&a, &b, 3)).unwrap());
    }

    #[test]
    fn relative_commutant_of_block_circulants_is_itself() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            3,
        )
        .unwrap();
        let commutant = family.relative_commutant().unwrap();
        assert!(commutant.equal(&family.basis).unwrap());
    }

    #[test]
    fn relative_commutant_always_contains_the_family() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            diagonal(&[1, 2]),
            diagonal(&[3, 1]),
            2,
        )
        .unwrap();
        let commutant = family.relative_commutant().unwrap();
        assert!(commutant.contains_subspace(&family.basis).unwrap());
    }

    #[test]
    fn relative_commutant_of_scalars_alone_is_larger() {
        // The span of the block identity: everything block Toeplitz that
        // commutes with it Toeplitz-stably is much larger.
        let n = 2;
        let d = 2;
        let identity_vec = BlockToeplitz::identity(n, d).coeff_vec();
        let span = SubspaceBasis::from_vectors(coeff_ambient(n, d), vec![identity_vec]).unwrap();
        let commutant = relative_commutant(n, d, &span).unwrap();
        assert!(commutant.dim() > 1);
        assert!(commutant.contains_subspace(&span).unwrap());
    }

    #[test]
    fn maximality_of_block_circulants_over_diagonal() {
        let family = CoupledFamily::build(
            AlgebraSpec::Diagonal { d: 2 },
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            3,
        )
        .unwrap();
        let report = family.maximality(3, 1).unwrap();
        assert!(report.verdict.is_maximal());
        assert_eq!(report.family_dim, report.commutant_dim);
    }

    #[test]
    fn scalar_entry_algebra_is_not_maximal() {
        // Entry algebra = scalar multiples of I inside the 2×2 matrices:
        // not maximal commutative, so the family cannot be maximal either.
        let entry = AlgebraSpec::Explicit {
            d: 2,
            basis: vec![ExactMatrix::identity(2)],
        };
        let family = CoupledFamily::build(
            entry,
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            2,
        )
        .unwrap();
        let report = family.maximality(4, 1).unwrap();
        match report.verdict {
            MaximalityVerdict::NotMaximal { witness, extension_dim } => {
                assert!(extension_dim > report.family_dim);
                // Witness genuinely extends the family inside a commutative
                // Toeplitz-stable algebra; re-run the growth to confirm.
                let seeded = family
                    .basis
                    .sum(
                        &SubspaceBasis::from_vectors(
                            family.basis.ambient(),
                            vec![witness.coeff_vec()],
                        )
                        .unwrap(),
                    )
                    .unwrap();
                let extension = grow_commutative_toeplitz_algebra(2, 2, &seeded, 4)
                    .unwrap()
                    .expect("witness extension stabilizes");
                assert!(extension.dim() > family.dim());
            }
            other => panic!("expected NotMaximal, got {other:?}"),
        }
    }

    #[test]
    fn pinned_scalar_family_is_not_maximal() {
        // Factors with disjoint supports pin every off-diagonal block of a
        // scalar-entried family to zero; the lone block identity is far
        // from maximal.
        let entry = AlgebraSpec::Explicit {
            d: 2,
            basis: vec![ExactMatrix::identity(2)],
        };
        let family = CoupledFamily::build(
            entry,
            ExactMatrix::unit(2, 2, 0, 0),
            ExactMatrix::unit(2, 2, 1, 1),
            2,
        )
        .unwrap();
        assert_eq!(family.dim(), 1);
        let report = family.maximality(4, 5).unwrap();
        assert!(matches!(report.verdict, MaximalityVerdict::NotMaximal { .. }));
    }

    #[test]
    fn derive_coupling_from_invertible_block() {
        let t = BlockToeplitz::from_block_fn(2, 2, |j| match j {
            1 => diagonal(&[1, 2]),
            -1 => diagonal(&[3, 4]),
            _ => ExactMatrix::zero(2, 2),
        });
        let outcome = derive_coupling(&t, &AlgebraSpec::Diagonal { d: 2 }).unwrap();
        match outcome {
            DerivedCoupling::Derived { a, b, pivot } => {
                assert_eq!(pivot, 1);
                assert_eq!(a, diagonal(&[3, 2]));
                assert!(b.is_identity());
                // The generating member satisfies the derived coupling.
                let family =
                    CoupledFamily::build(AlgebraSpec::Diagonal { d: 2 }, a, b, 2).unwrap();
                assert!(family.contains(&t).unwrap());
            }
            other => panic!("expected Derived, got {other:?}"),
        }
    }

    #[test]
    fn derive_coupling_without_invertible_entries() {
        let t = diagonal_embedding(&diagonal(&[1, 2]), 3);
        assert!(matches!(
            derive_coupling(&t, &AlgebraSpec::Diagonal { d: 2 }).unwrap(),
            DerivedCoupling::NoInvertibleEntry
        ));
    }

    #[test]
    fn derive_coupling_schur_entries_all_singular() {
        // Off-diagonal Schur entries with zero scalar are never invertible.
        let corner = ExactMatrix::from_int_rows(&[&[1, 0]]);
        let singular = crate::subalgebras::SchurElement {
            lambda: G::zero(),
            corner,
        }
        .embed();
        let t = BlockToeplitz::from_block_fn(2, 3, |j| match j {
            0 => ExactMatrix::identity(3),
            _ => singular.clone(),
        });
        assert!(matches!(
            derive_coupling(&t, &AlgebraSpec::Schur { sigma: 1, tau: 2 }).unwrap(),
            DerivedCoupling::NoInvertibleEntry
        ));
    }

    #[test]
    fn derived_coupling_contains_the_whole_algebra() {
        // Build a family with an invertible off-diagonal member, derive a
        // coupling from that member, and check span containment.
        let a = diagonal(&[2, 1]);
        let b = diagonal(&[1, 3]);
        let family =
            CoupledFamily::build(AlgebraSpec::Diagonal { d: 2 }, a.clone(), b.clone(), 2).unwrap();
        // A member with invertible sub-diagonal block: T_1 = I forces
        // T_{1−2} = b⁻¹·a.
        let member = BlockToeplitz::from_block_fn(2, 2, |j| match j {
            1 => ExactMatrix::identity(2),
            -1 => ExactMatrix::diagonal(&[G::from_int(2), G::from_ratio(1, 3)]),
            _ => ExactMatrix::zero(2, 2),
        });
        assert!(family.contains(&member).unwrap());
        let derived = derive_coupling(&member, &AlgebraSpec::Diagonal { d: 2 }).unwrap();
        let DerivedCoupling::Derived { a: da, b: db, .. } = derived else {
            panic!("expected a derived coupling");
        };
        let derived_family =
            CoupledFamily::build(AlgebraSpec::Diagonal { d: 2 }, da, db, 2).unwrap();
        assert!(derived_family
            .basis
            .contains_subspace(&family.basis)
            .unwrap());
    }

    #[test]
    fn random_trivial_kernel_pairs_give_closed_families() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let entry = AlgebraSpec::Diagonal { d: 2 };
        let entry_basis = crate::subalgebras::algebra_basis(&entry).unwrap();
        let mut checked = 0;
        while checked < 8 {
            let a = ExactMatrix::from_vec(2, 2, &sample::member(&mut rng, &entry_basis)).unwrap();
            let b = ExactMatrix::from_vec(2, 2, &sample::member(&mut rng, &entry_basis)).unwrap();
            if !trivial_joint_kernel(&a, &b).unwrap() {
                continue;
            }
            let family = CoupledFamily::build(entry.clone(), a, b, 3).unwrap();
            assert!(family.is_closed().unwrap());
            // and the shift witness lies inside whenever it is defined
            let shift = weighted_shift(&family.a, &family.b, 3);
            assert!(family.contains(&shift).unwrap());
            checked += 1;
        }
    }

    #[test]
    fn circulant_entry_families_are_maximal() {
        let entry = AlgebraSpec::Circulant {
            n: 2,
            alpha: CirculantParam::one(),
        };
        let family = CoupledFamily::build(
            entry,
            ExactMatrix::identity(2),
            ExactMatrix::identity(2),
            2,
        )
        .unwrap();
        let report = family.maximality(3, 1).unwrap();
        assert!(report.verdict.is_maximal());
    }
}
