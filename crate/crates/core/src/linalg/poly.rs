use std::fmt;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactfield::{GaussianRational, Rational};
use crate::linalg::matrix::ExactMatrix;

/// Univariate polynomial over the Gaussian rationals, coefficients
/// lowest-degree first, canonical (no trailing zeros).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(value: GaussianRational) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(GaussianRational::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![GaussianRational::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Euclidean division, `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dlead = divisor.leading().expect("nonzero divisor").clone();
        let dlead_inv = dlead.inv().expect("leading coefficient is nonzero");
        let ddeg = divisor.degree().expect("nonzero divisor");
        let mut remainder = self.coeffs.clone();
        let mut quotient = vec![
            GaussianRational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while remainder.len() > ddeg && !remainder.is_empty() {
            let last = remainder.last().expect("nonempty").clone();
            if last.is_zero() {
                remainder.pop();
                continue;
            }
            let shift = remainder.len() - 1 - ddeg;
            let factor = &last * &dlead_inv;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                let sub = &factor * c;
                remainder[shift + k] -= &sub;
            }
            quotient[shift] = factor;
            remainder.pop();
        }
        Ok((Self::from_coeffs(quotient), Self::from_coeffs(remainder)))
    }

    /// Normalize to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lead) => self.scale(&lead.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluate at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        assert!(m.is_square(), "polynomial evaluation needs a square matrix");
        let n = m.rows();
        let mut acc = ExactMatrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &ExactMatrix::identity(n).scale(c);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monic greatest common divisor by the exact Euclidean algorithm.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolyGcd);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.divmod(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Monic least-degree annihilator: the first linear dependency among
/// I, m, m², …
pub fn minimal_polynomial(m: &ExactMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut powers: Vec<Vec<GaussianRational>> = vec![ExactMatrix::identity(n).to_vec()];
    let mut current = ExactMatrix::identity(n);
    loop {
        current = &current * m;
        let target = current.to_vec();
        // Columns are the vectorized powers computed so far.
        let system = ExactMatrix::from_fn(n * n, powers.len(), |r, c| powers[c][r].clone());
        if let Some(combo) = system.solve(&target) {
            let degree = powers.len();
            let mut coeffs = vec![GaussianRational::zero(); degree + 1];
            for (k, c) in combo.into_iter().enumerate() {
                coeffs[k] = -&c;
            }
            coeffs[degree] = GaussianRational::one();
            return Ok(Poly::from_coeffs(coeffs));
        }
        powers.push(target);
        assert!(
            powers.len() <= n * n + 1,
            "powers must become dependent by dimension count"
        );
    }
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence, which
/// stays exact over Q(i): the only divisions are by the integers 1..=n.
pub fn char_polynomial(m: &ExactMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    let identity = ExactMatrix::identity(n);
    let mut aux = ExactMatrix::identity(n);
    for k in 1..=n {
        aux = m * &aux;
        let k_inv = GaussianRational::from(Rational::new(BigInt::from(1), BigInt::from(k as i64)));
        let ck = -&(&aux.trace() * &k_inv);
        coeffs[n - k] = ck.clone();
        if k < n {
            aux = &aux + &identity.scale(&ck);
        }
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// A matrix is nonderogatory exactly when its minimal and characteristic
/// polynomials coincide.
pub fn is_nonderogatory(m: &ExactMatrix) -> Result<bool> {
    Ok(minimal_polynomial(m)? == char_polynomial(m)?)
}

/// Companion matrix of a monic polynomial; always nonderogatory.
pub fn companion_matrix(p: &Poly) -> Result<ExactMatrix> {
    if !p.is_monic() || p.degree() == Some(0) || p.is_zero() {
        return Err(Error::Invalid(
            "companion matrix needs a monic polynomial of positive degree".to_string(),
        ));
    }
    let n = p.degree().expect("nonzero polynomial");
    Ok(ExactMatrix::from_fn(n, n, |r, c| {
        if c == n - 1 {
            -&p.coeffs()[r]
        } else if r == c + 1 {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational as G;
    use proptest::prelude::*;

    #[test]
    fn nilpotent_two_by_two() {
        let m = ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let min = minimal_polynomial(&m).unwrap();
        let chi = char_polynomial(&m).unwrap();
        assert_eq!(min, Poly::from_int_coeffs(&[0, 0, 1])); // x²
        assert_eq!(chi, Poly::from_int_coeffs(&[0, 0, 1]));
        assert!(is_nonderogatory(&m).unwrap());
    }

    #[test]
    fn identity_is_derogatory() {
        let m = ExactMatrix::identity(2);
        assert_eq!(minimal_polynomial(&m).unwrap(), Poly::from_int_coeffs(&[-1, 1]));
        assert_eq!(char_polynomial(&m).unwrap(), Poly::from_int_coeffs(&[1, -2, 1]));
        assert!(!is_nonderogatory(&m).unwrap());
    }

    #[test]
    fn companion_matrices_are_nonderogatory() {
        // x² − x − 1
        let p = Poly::from_int_coeffs(&[-1, -1, 1]);
        let m = companion_matrix(&p).unwrap();
        assert_eq!(minimal_polynomial(&m).unwrap(), p);
        assert_eq!(char_polynomial(&m).unwrap(), p);
        assert!(is_nonderogatory(&m).unwrap());
    }

    #[test]
    fn gcd_examples() {
        let x = Poly::x();
        let x2 = x.mul(&x);
        assert_eq!(poly_gcd(&x2, &x).unwrap(), x);

        let x2m1 = Poly::from_int_coeffs(&[-1, 0, 1]);
        let xm1 = Poly::from_int_coeffs(&[-1, 1]);
        assert_eq!(poly_gcd(&x2m1, &xm1).unwrap(), xm1);

        let x2p1 = Poly::from_int_coeffs(&[1, 0, 1]);
        let xp1 = Poly::from_int_coeffs(&[1, 1]);
        assert_eq!(poly_gcd(&x2p1, &xp1).unwrap(), Poly::one());
    }

    #[test]
    fn gcd_remainder_sequence_matches_hand_division() {
        // (x²+1) = (x+1)(x−1) + 2, then (x+1) = (2)(x/2 + 1/2) + 0,
        // so the monic gcd is 1.
        let x2p1 = Poly::from_int_coeffs(&[1, 0, 1]);
        let xp1 = Poly::from_int_coeffs(&[1, 1]);
        let (q, r) = x2p1.divmod(&xp1).unwrap();
        assert_eq!(q, Poly::from_int_coeffs(&[-1, 1]));
        assert_eq!(r, Poly::from_int_coeffs(&[2]));
        let (_, r2) = xp1.divmod(&r).unwrap();
        assert!(r2.is_zero());
    }

    #[test]
    fn gcd_of_two_zero_polynomials_is_an_error() {
        assert_eq!(
            poly_gcd(&Poly::zero(), &Poly::zero()).unwrap_err(),
            Error::ZeroPolyGcd
        );
    }

    #[test]
    fn known_char_polynomial() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        // x² − 5x − 2
        assert_eq!(char_polynomial(&m).unwrap(), Poly::from_int_coeffs(&[-2, -5, 1]));
    }

    fn arb_square(max_dim: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max_dim).prop_flat_map(|n| {
            proptest::collection::vec((-4i64..=4).prop_map(G::from_int), n * n)
                .prop_map(move |entries| ExactMatrix::new(n, n, entries).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn annihilators_annihilate(m in arb_square(4)) {
            let min = minimal_polynomial(&m).unwrap();
            let chi = char_polynomial(&m).unwrap();
            prop_assert!(min.eval_matrix(&m).is_zero());
            prop_assert!(chi.eval_matrix(&m).is_zero());
            // and the minimal polynomial divides the characteristic one
            let (_, r) = chi.divmod(&min).unwrap();
            prop_assert!(r.is_zero());
        }

        #[test]
        fn gcd_divides_both(a in proptest::collection::vec(-4i64..=4, 1..5),
                            b in proptest::collection::vec(-4i64..=4, 1..5)) {
            let p = Poly::from_int_coeffs(&a);
            let q = Poly::from_int_coeffs(&b);
            prop_assume!(!p.is_zero() || !q.is_zero());
            let g = poly_gcd(&p, &q).unwrap();
            prop_assert!(!g.is_zero());
            prop_assert!(g.is_monic());
            if !p.is_zero() {
                prop_assert!(p.divmod(&g).unwrap().1.is_zero());
            }
            if !q.is_zero() {
                prop_assert!(q.divmod(&g).unwrap().1.is_zero());
            }
        }
    }
}
