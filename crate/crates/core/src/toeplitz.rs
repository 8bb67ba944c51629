//! Scalar and block Toeplitz carriers, the product-structure criterion,
//! and the generalized circulant algebras.
//!
//! A block Toeplitz matrix is stored as its `2n−1` defining blocks; the
//! dense `nd×nd` expansion has block `(p, q)` equal to `T_{p−q}`, so
//! positive indices run below the main block diagonal. The flat block
//! sequence is ordered by ascending index (offset `j + n − 1`), and that
//! ordering is part of the serialization contract.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::linalg::{ExactMatrix, SubspaceBasis};

/// Block Toeplitz matrix of block order `n` with `d×d` blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockToeplitz {
    n: usize,
    d: usize,
    blocks: Vec<ExactMatrix>,
}

impl BlockToeplitz {
    pub fn from_blocks(n: usize, d: usize, blocks: Vec<ExactMatrix>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Invalid("block order and block size must be positive".into()));
        }
        if blocks.len() != 2 * n - 1 {
            return Err(Error::Shape(format!(
                "block order {n} needs {} blocks, got {}",
                2 * n - 1,
                blocks.len()
            )));
        }
        for b in &blocks {
            if b.rows() != d || b.cols() != d {
                return Err(Error::Shape(format!(
                    "every block must be {d}x{d}, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(Self { n, d, blocks })
    }

    pub fn from_block_fn(n: usize, d: usize, mut f: impl FnMut(isize) -> ExactMatrix) -> Self {
        let blocks = (-(n as isize - 1)..=(n as isize - 1)).map(&mut f).collect();
        Self::from_blocks(n, d, blocks).expect("generated blocks are well-shaped")
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self::from_block_fn(n, d, |_| ExactMatrix::zero(d, d))
    }

    /// The multiplicative identity: `T_0 = I`, all other blocks zero.
    pub fn identity(n: usize, d: usize) -> Self {
        Self::from_block_fn(n, d, |j| {
            if j == 0 {
                ExactMatrix::identity(d)
            } else {
                ExactMatrix::zero(d, d)
            }
        })
    }

    /// Scalar Toeplitz matrix (`d = 1`) from its `2n−1` coefficients in
    /// ascending index order.
    pub fn scalar(n: usize, coeffs: &[GaussianRational]) -> Result<Self> {
        if coeffs.len() != 2 * n - 1 {
            return Err(Error::Shape(format!(
                "order {n} needs {} coefficients, got {}",
                2 * n - 1,
                coeffs.len()
            )));
        }
        let blocks = coeffs
            .iter()
            .map(|c| ExactMatrix::new(1, 1, vec![c.clone()]).expect("1x1"))
            .collect();
        Self::from_blocks(n, 1, blocks)
    }

    pub fn scalar_from_ints(n: usize, coeffs: &[i64]) -> Self {
        let coeffs: Vec<GaussianRational> =
            coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect();
        Self::scalar(n, &coeffs).expect("coefficient count")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Size of the dense expansion.
    pub fn dim(&self) -> usize {
        self.n * self.d
    }

    pub fn block(&self, j: isize) -> &ExactMatrix {
        let offset = j + self.n as isize - 1;
        assert!(
            (0..2 * self.n as isize - 1).contains(&offset),
            "block index {j} out of range for order {}",
            self.n
        );
        &self.blocks[offset as usize]
    }

    pub fn set_block(&mut self, j: isize, block: ExactMatrix) {
        assert_eq!((block.rows(), block.cols()), (self.d, self.d), "block shape");
        let offset = (j + self.n as isize - 1) as usize;
        self.blocks[offset] = block;
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    /// Scalar coefficient `t_j` (only for `d = 1`).
    pub fn coeff(&self, j: isize) -> &GaussianRational {
        assert_eq!(self.d, 1, "coefficient access needs a scalar Toeplitz matrix");
        self.block(j).at(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ExactMatrix::is_zero)
    }

    /// True when every block with nonzero index vanishes.
    pub fn is_block_diagonal(&self) -> bool {
        (1..self.n as isize).all(|j| self.block(j).is_zero() && self.block(-j).is_zero())
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let (n, d) = (self.n, self.d);
        ExactMatrix::from_fn(n * d, n * d, |r, c| {
            let (p, q) = (r / d, c / d);
            self.block(p as isize - q as isize).at(r % d, c % d).clone()
        })
    }

    /// Read a dense `nd×nd` matrix back into block Toeplitz form.
    /// `Ok(None)` when two blocks on the same block diagonal disagree.
    pub fn from_dense(m: &ExactMatrix, n: usize, d: usize) -> Result<Option<Self>> {
        if n == 0 || d == 0 {
            return Err(Error::Invalid("block order and block size must be positive".into()));
        }
        if m.rows() != n * d || m.cols() != n * d {
            return Err(Error::Shape(format!(
                "expected {0}x{0} dense matrix, got {1}x{2}",
                n * d,
                m.rows(),
                m.cols()
            )));
        }
        let read_block = |p: usize, q: usize| {
            ExactMatrix::from_fn(d, d, |r, c| m.at(p * d + r, q * d + c).clone())
        };
        let mut blocks = Vec::with_capacity(2 * n - 1);
        for j in -(n as isize - 1)..=(n as isize - 1) {
            // Representative position for index j = p − q.
            let (p, q) = if j >= 0 { (j as usize, 0) } else { (0, (-j) as usize) };
            blocks.push(read_block(p, q));
        }
        let candidate = Self::from_blocks(n, d, blocks)?;
        if &candidate.to_dense() == m {
            Ok(Some(candidate))
        } else {
            Ok(None)
        }
    }

    /// Flat coefficient vector: blocks in ascending index order, each
    /// vectorized row-major. Length `(2n−1)d²`.
    pub fn coeff_vec(&self) -> Vec<GaussianRational> {
        self.blocks.iter().flat_map(|b| b.to_vec()).collect()
    }

    pub fn from_coeff_vec(n: usize, d: usize, coeffs: &[GaussianRational]) -> Result<Self> {
        if coeffs.len() != coeff_ambient(n, d) {
            return Err(Error::Shape(format!(
                "coefficient vector must have length {}, got {}",
                coeff_ambient(n, d),
                coeffs.len()
            )));
        }
        let blocks = coeffs
            .chunks(d * d)
            .map(|chunk| ExactMatrix::new(d, d, chunk.to_vec()).expect("chunk length"))
            .collect();
        Self::from_blocks(n, d, blocks)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_blocks(self.n, self.d, blocks)
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        let blocks = self.blocks.iter().map(|b| b.scale(factor)).collect();
        Self::from_blocks(self.n, self.d, blocks).expect("same shape")
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::Shape(format!(
                "block shapes differ: ({}, {}) vs ({}, {})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    /// The product-structure criterion: `self·other` is again block
    /// Toeplitz exactly when `T_p·U_{q−n} = T_{p−n}·U_q` for all
    /// `p, q = 1 … n−1`.
    pub fn product_condition(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        let n = self.n as isize;
        for p in 1..n {
            for q in 1..n {
                let lhs = self.block(p) * other.block(q - n);
                let rhs = self.block(p - n) * other.block(q);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Dense product plus its block Toeplitz reading when one exists.
    ///
    /// The structured half is recovered directly from the dense product's
    /// block diagonals, independently of `product_condition`; the
    /// equivalence of the two routes is what the criterion asserts.
    pub fn multiply(&self, other: &Self) -> Result<BtProduct> {
        self.check_same_shape(other)?;
        let dense = &self.to_dense() * &other.to_dense();
        let structured = Self::from_dense(&dense, self.n, self.d)?;
        Ok(BtProduct { dense, structured })
    }
}

impl fmt::Debug for BlockToeplitz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BlockToeplitz n={} d={} {{", self.n, self.d)?;
        for j in -(self.n as isize - 1)..=(self.n as isize - 1) {
            writeln!(f, "  T_{j} = {:?}", self.block(j))?;
        }
        write!(f, "}}")
    }
}

/// Result of a block Toeplitz multiplication.
pub struct BtProduct {
    pub dense: ExactMatrix,
    pub structured: Option<BlockToeplitz>,
}

/// Parameter of a generalized circulant algebra: a Gaussian rational or
/// the point at infinity. Finite `alpha` corresponds to the factor pair
/// `(alpha, 1)`, infinity to `(1, 0)`; only the quotient matters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CirculantParam {
    Finite(GaussianRational),
    Infinity,
}

impl CirculantParam {
    pub fn zero() -> Self {
        Self::Finite(GaussianRational::zero())
    }

    pub fn one() -> Self {
        Self::Finite(GaussianRational::one())
    }

    /// The scalar factor pair `(a, b)` with `a·t_j = b·t_{j−n}`.
    pub fn pair(&self) -> (GaussianRational, GaussianRational) {
        match self {
            Self::Finite(alpha) => (alpha.clone(), GaussianRational::one()),
            Self::Infinity => (GaussianRational::one(), GaussianRational::zero()),
        }
    }
}

impl fmt::Display for CirculantParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(alpha) => write!(f, "{alpha}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for CirculantParam {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text == "inf" {
            Ok(Self::Infinity)
        } else {
            Ok(Self::Finite(text.parse()?))
        }
    }
}

/// Ambient dimension of the block coefficient space.
pub fn coeff_ambient(n: usize, d: usize) -> usize {
    (2 * n - 1) * d * d
}

/// Canonical basis of the generalized circulant algebra with parameter
/// `alpha`, as coefficient vectors of scalar Toeplitz matrices.
///
/// The members satisfy `alpha·t_j = t_{j−n}` for `j = 1 … n−1`; for
/// finite `alpha` the free coefficients are `t_0, …, t_{n−1}`, while the
/// point at infinity frees the negative side instead (`t_j = 0`), giving
/// the upper triangular Toeplitz matrices. `alpha = 0` gives the lower
/// triangular ones.
pub fn circulant_basis(n: usize, alpha: &CirculantParam) -> SubspaceBasis {
    assert!(n >= 1);
    let ambient = 2 * n - 1;
    let offset = |j: isize| (j + n as isize - 1) as usize;
    let mut vectors = Vec::with_capacity(n);
    let mut identity = vec![GaussianRational::zero(); ambient];
    identity[offset(0)] = GaussianRational::one();
    vectors.push(identity);
    for j in 1..n as isize {
        let mut v = vec![GaussianRational::zero(); ambient];
        match alpha {
            CirculantParam::Finite(a) => {
                v[offset(j)] = GaussianRational::one();
                v[offset(j - n as isize)] = a.clone();
            }
            CirculantParam::Infinity => {
                v[offset(j - n as isize)] = GaussianRational::one();
            }
        }
        vectors.push(v);
    }
    SubspaceBasis::from_vectors(ambient, vectors).expect("basis vectors have ambient length")
}

/// Membership of a scalar Toeplitz matrix in the circulant algebra with
/// the given parameter.
pub fn in_circulant(t: &BlockToeplitz, alpha: &CirculantParam) -> Result<bool> {
    if t.d() != 1 {
        return Err(Error::Invalid("circulant membership needs a scalar Toeplitz matrix".into()));
    }
    circulant_basis(t.n(), alpha).contains(&t.coeff_vec())
}

/// Outcome of scanning a scalar Toeplitz matrix for its circulant class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlphaScan {
    /// Diagonal matrices lie in every circulant algebra.
    AllAlphas,
    Unique(CirculantParam),
    NoAlpha,
}

/// Determine which circulant algebra, if any, contains the given scalar
/// Toeplitz matrix.
pub fn find_alpha(t: &BlockToeplitz) -> Result<AlphaScan> {
    if t.d() != 1 {
        return Err(Error::Invalid("alpha scan needs a scalar Toeplitz matrix".into()));
    }
    let n = t.n() as isize;
    let off_diagonal_zero =
        (1..n).all(|j| t.coeff(j).is_zero() && t.coeff(j - n).is_zero());
    if off_diagonal_zero {
        return Ok(AlphaScan::AllAlphas);
    }
    let lower_support: Vec<isize> = (1..n).filter(|&j| !t.coeff(j).is_zero()).collect();
    if lower_support.is_empty() {
        // Upper triangular with some nonzero strictly-upper coefficient.
        return Ok(AlphaScan::Unique(CirculantParam::Infinity));
    }
    let j0 = lower_support[0];
    let alpha = t.coeff(j0 - n).checked_div(t.coeff(j0))?;
    for j in 1..n {
        if t.coeff(j - n) != &(&alpha * t.coeff(j)) {
            return Ok(AlphaScan::NoAlpha);
        }
    }
    Ok(AlphaScan::Unique(CirculantParam::Finite(alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational as G;
    use proptest::prelude::*;

    #[test]
    fn dense_round_trip() {
        let t = BlockToeplitz::scalar_from_ints(3, &[1, 2, 3, 4, 5]);
        let dense = t.to_dense();
        let back = BlockToeplitz::from_dense(&dense, 3, 1).unwrap().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn from_dense_rejects_non_toeplitz() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert!(BlockToeplitz::from_dense(&m, 2, 1).unwrap().is_none());
    }

    #[test]
    fn from_dense_reads_off_diagonals() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[3, 1]]);
        let t = BlockToeplitz::from_dense(&m, 2, 1).unwrap().unwrap();
        assert_eq!(t.coeff(0), &G::from_int(1));
        assert_eq!(t.coeff(1), &G::from_int(3));
        assert_eq!(t.coeff(-1), &G::from_int(2));
    }

    #[test]
    fn from_dense_checks_size() {
        let m = ExactMatrix::identity(3);
        assert!(BlockToeplitz::from_dense(&m, 2, 2).is_err());
    }

    #[test]
    fn product_condition_counterexample() {
        // t has t_1 = 1, u has u_{−1} = 1; the condition compares 1·1 to 0·0.
        let t = BlockToeplitz::scalar_from_ints(2, &[0, 0, 1]);
        let u = BlockToeplitz::scalar_from_ints(2, &[1, 0, 0]);
        assert!(!t.product_condition(&u).unwrap());
        let product = t.multiply(&u).unwrap();
        assert!(product.structured.is_none());
    }

    #[test]
    fn product_condition_upper_triangular_pairs() {
        // Both factors upper triangular: positive-index coefficients vanish,
        // so both sides of the criterion are zero.
        let t = BlockToeplitz::scalar_from_ints(3, &[2, 1, 1, 0, 0]);
        let u = BlockToeplitz::scalar_from_ints(3, &[5, -1, 3, 0, 0]);
        assert!(t.product_condition(&u).unwrap());
        assert!(t.multiply(&u).unwrap().structured.is_some());
    }

    #[test]
    fn identity_passes_product_condition() {
        let t = BlockToeplitz::scalar_from_ints(3, &[1, 2, 3, 4, 5]);
        let id = BlockToeplitz::identity(3, 1);
        assert!(t.product_condition(&id).unwrap());
        let product = t.multiply(&id).unwrap();
        assert_eq!(product.structured.unwrap(), t);
    }

    #[test]
    fn circulant_product_stays_circulant() {
        let alpha = CirculantParam::one();
        let basis = circulant_basis(3, &alpha);
        let t = BlockToeplitz::from_coeff_vec(3, 1, &basis.vectors()[1]).unwrap();
        let u = BlockToeplitz::from_coeff_vec(3, 1, &basis.vectors()[2]).unwrap();
        let product = t.multiply(&u).unwrap();
        let structured = product.structured.expect("circulant products are Toeplitz");
        assert!(in_circulant(&structured, &alpha).unwrap());
    }

    #[test]
    fn circulant_basis_alpha_zero_is_lower_triangular() {
        let basis = circulant_basis(3, &CirculantParam::zero());
        assert_eq!(basis.dim(), 3);
        for v in basis.vectors() {
            let t = BlockToeplitz::from_coeff_vec(3, 1, v).unwrap();
            // strictly upper coefficients vanish
            assert!(t.coeff(-1).is_zero());
            assert!(t.coeff(-2).is_zero());
        }
    }

    #[test]
    fn circulant_basis_infinity_is_upper_triangular() {
        let basis = circulant_basis(3, &CirculantParam::Infinity);
        assert_eq!(basis.dim(), 3);
        for v in basis.vectors() {
            let t = BlockToeplitz::from_coeff_vec(3, 1, v).unwrap();
            assert!(t.coeff(1).is_zero());
            assert!(t.coeff(2).is_zero());
        }
    }

    #[test]
    fn circulant_basis_order_one() {
        let basis = circulant_basis(1, &CirculantParam::one());
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.vectors()[0], vec![G::one()]);
    }

    #[test]
    fn alpha_scan_identity_is_all() {
        let id = BlockToeplitz::identity(4, 1);
        assert_eq!(find_alpha(&id).unwrap(), AlphaScan::AllAlphas);
    }

    #[test]
    fn alpha_scan_recovers_circulant() {
        // t_{j−n} = t_j for all j: the classical circulant pattern.
        let t = BlockToeplitz::scalar_from_ints(3, &[3, 2, 7, 3, 2]);
        assert_eq!(
            find_alpha(&t).unwrap(),
            AlphaScan::Unique(CirculantParam::one())
        );
    }

    #[test]
    fn alpha_scan_lower_triangular_and_its_inverse() {
        // t_1 = 1, t_{−1} = 0: lower triangular, parameter zero.
        let t = BlockToeplitz::scalar_from_ints(2, &[0, 1, 1]);
        assert_eq!(find_alpha(&t).unwrap(), AlphaScan::Unique(CirculantParam::zero()));
        let inv = t.to_dense().inverse().unwrap().unwrap();
        let inv_t = BlockToeplitz::from_dense(&inv, 2, 1).unwrap().unwrap();
        assert_eq!(
            find_alpha(&inv_t).unwrap(),
            AlphaScan::Unique(CirculantParam::zero())
        );
        assert!(in_circulant(&inv_t, &CirculantParam::zero()).unwrap());
    }

    #[test]
    fn alpha_scan_inconsistent_matrix() {
        let t = BlockToeplitz::scalar_from_ints(3, &[1, 2, 0, 1, 1]);
        assert_eq!(find_alpha(&t).unwrap(), AlphaScan::NoAlpha);
    }

    #[test]
    fn alpha_scan_of_order_one_is_all() {
        let t = BlockToeplitz::scalar_from_ints(1, &[5]);
        assert_eq!(find_alpha(&t).unwrap(), AlphaScan::AllAlphas);
    }

    fn arb_scalar_toeplitz(n: usize) -> impl Strategy<Value = BlockToeplitz> {
        proptest::collection::vec(-3i64..=3, 2 * n - 1)
            .prop_map(move |coeffs| BlockToeplitz::scalar_from_ints(n, &coeffs))
    }

    fn arb_block_toeplitz(n: usize, d: usize) -> impl Strategy<Value = BlockToeplitz> {
        proptest::collection::vec((-2i64..=2).prop_map(G::from_int), (2 * n - 1) * d * d)
            .prop_map(move |coeffs| BlockToeplitz::from_coeff_vec(n, d, &coeffs).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_condition_matches_dense_structure(
            t in arb_scalar_toeplitz(3),
            u in arb_scalar_toeplitz(3),
        ) {
            let condition = t.product_condition(&u).unwrap();
            let product = t.multiply(&u).unwrap();
            prop_assert_eq!(condition, product.structured.is_some());
        }

        #[test]
        fn product_condition_matches_dense_structure_blockwise(
            t in arb_block_toeplitz(2, 2),
            u in arb_block_toeplitz(2, 2),
        ) {
            let condition = t.product_condition(&u).unwrap();
            let product = t.multiply(&u).unwrap();
            prop_assert_eq!(condition, product.structured.is_some());
            if let Some(structured) = product.structured {
                prop_assert_eq!(structured.to_dense(), product.dense);
            }
        }

        #[test]
        fn coeff_vec_round_trip(t in arb_scalar_toeplitz(4)) {
            let v = t.coeff_vec();
            prop_assert_eq!(BlockToeplitz::from_coeff_vec(4, 1, &v).unwrap(), t);
        }

        #[test]
        fn unique_alpha_implies_membership(t in arb_scalar_toeplitz(3)) {
            if let AlphaScan::Unique(alpha) = find_alpha(&t).unwrap() {
                prop_assert!(in_circulant(&t, &alpha).unwrap());
            }
        }
    }
}
