use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::linalg::subspace::SubspaceBasis;

/// Dense matrix of Gaussian rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Result of a reduced row-echelon computation.
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self { rows, cols, entries }
    }

    /// Convenience constructor from integer entries, row-major.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| GaussianRational::from_int(rows[i][j]))
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| GaussianRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Unit matrix with a single 1 at `(row, col)`.
    pub fn unit(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| {
            if (r, c) == (row, col) {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn diagonal(values: &[GaussianRational]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                values[r].clone()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussianRational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    /// Row-major vectorization; the fixed convention for every subspace
    /// of matrices in this crate.
    pub fn to_vec(&self) -> Vec<GaussianRational> {
        self.entries.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, entries: &[GaussianRational]) -> Result<Self> {
        Self::new(rows, cols, entries.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * factor)
    }

    pub fn trace(&self) -> GaussianRational {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = GaussianRational::zero();
        for k in 0..self.rows {
            acc += self.at(k, k);
        }
        acc
    }

    /// Stack `self` on top of `other` (matching column counts).
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {}x{} on {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn pow(&self, exponent: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Reduced row-echelon form with deterministic pivoting: the first
    /// nonzero entry in row order wins. Exact arithmetic needs no
    /// numerical pivoting, so the output is unique and reproducible.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m
                .at(pivot_row, col)
                .inv()
                .expect("pivot entry is nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let rref = self.rref();
        let reduced = &rref.reduced;
        let pivot_of_col: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (row, &col) in rref.pivots.iter().enumerate() {
                map[col] = Some(row);
            }
            map
        };
        let mut vectors = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (row, &col) in rref.pivots.iter().enumerate() {
                v[col] = -reduced.at(row, free);
            }
            vectors.push(v);
        }
        SubspaceBasis::from_vectors(self.cols, vectors).expect("kernel vectors have ambient length")
    }

    /// Exact two-sided inverse: `Ok(None)` when singular, `Err` when not
    /// square.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut augmented = ExactMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        });
        augmented = augmented.rref().reduced;
        for k in 0..n {
            if !augmented.at(k, k).is_one() {
                return Ok(None);
            }
        }
        Ok(Some(ExactMatrix::from_fn(n, n, |r, c| {
            augmented.at(r, c + n).clone()
        })))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution of `self·x = rhs` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let augmented = ExactMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let rref = augmented.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &col) in rref.pivots.iter().enumerate() {
            x[col] = rref.reduced.at(row, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, row: usize, factor: &GaussianRational) {
        for c in 0..self.cols {
            let v = self.at(row, c) * factor;
            self.set(row, c, v);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &GaussianRational) {
        for c in 0..self.cols {
            let v = self.at(target, c) - &(self.at(source, c) * factor);
            self.set(target, c, v);
        }
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: Self) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: Self) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: Self) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        ExactMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = GaussianRational::zero();
            for k in 0..self.cols {
                acc += &(self.at(r, k) * rhs.at(k, c));
            }
            acc
        })
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational as G;
    use proptest::prelude::*;

    #[test]
    fn rref_zero_matrix_has_rank_zero() {
        let rref = ExactMatrix::zero(2, 2).rref();
        assert_eq!(rref.rank(), 0);
        assert!(rref.reduced.is_zero());
    }

    #[test]
    fn rref_proportional_rows() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let rref = m.rref();
        assert_eq!(rref.rank(), 1);
        assert_eq!(rref.reduced, ExactMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_permutation_reaches_identity() {
        let m = ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let rref = m.rref();
        assert_eq!(rref.rank(), 2);
        assert!(rref.reduced.is_identity());
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(ExactMatrix::identity(3).kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert_eq!(ExactMatrix::zero(2, 2).kernel_basis().dim(), 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.dim(), 1);
        // span{(−2, 1)}
        for v in kernel.vectors() {
            for r in 0..m.rows() {
                let mut acc = G::zero();
                for c in 0..m.cols() {
                    acc += &(m.at(r, c) * &v[c]);
                }
                assert!(acc.is_zero());
            }
        }
        assert!(kernel
            .contains(&[G::from_int(-2), G::from_int(1)])
            .unwrap());
    }

    #[test]
    fn inverse_of_unitriangular() {
        let m = ExactMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(inv, ExactMatrix::from_int_rows(&[&[1, -1], &[0, 1]]));
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert!(ExactMatrix::zero(2, 2).inverse().unwrap().is_none());
    }

    #[test]
    fn inverse_of_diagonal() {
        let m = ExactMatrix::diagonal(&[G::from_int(2), G::i()]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(
            inv,
            ExactMatrix::diagonal(&[G::from_ratio(1, 2), G::imaginary_ratio(-1, 1)])
        );
    }

    #[test]
    fn inverse_rejects_non_square() {
        let err = ExactMatrix::zero(2, 3).inverse().unwrap_err();
        assert!(matches!(err, crate::error::Error::NotSquare { .. }));
    }

    #[test]
    fn solve_reads_off_unique_solutions() {
        let m = ExactMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let x = m.solve(&[G::from_int(3), G::from_int(1)]).unwrap();
        assert_eq!(x, vec![G::from_int(2), G::from_int(1)]);
        // inconsistent system
        let m = ExactMatrix::from_int_rows(&[&[1, 0], &[1, 0]]);
        assert!(m.solve(&[G::from_int(0), G::from_int(1)]).is_none());
    }

    fn arb_entry() -> impl Strategy<Value = G> {
        prop_oneof![
            (-6i64..=6).prop_map(G::from_int),
            ((-6i64..=6), (1i64..=4)).prop_map(|(n, d)| G::from_ratio(n, d)),
            (-4i64..=4).prop_map(|n| G::imaginary_ratio(n, 1)),
        ]
    }

    fn arb_matrix(max_dim: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(arb_entry(), r * c)
                .prop_map(move |entries| ExactMatrix::new(r, c, entries).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in arb_matrix(5)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix(4)) {
            let kernel = m.kernel_basis();
            for v in kernel.vectors() {
                for r in 0..m.rows() {
                    let mut acc = G::zero();
                    for c in 0..m.cols() {
                        acc += &(m.at(r, c) * &v[c]);
                    }
                    prop_assert!(acc.is_zero());
                }
            }
        }

        #[test]
        fn inverse_is_two_sided(m in arb_matrix(4)) {
            prop_assume!(m.is_square());
            if let Some(inv) = m.inverse().unwrap() {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            } else {
                prop_assert!(m.rank() < m.rows());
            }
        }
    }
}
