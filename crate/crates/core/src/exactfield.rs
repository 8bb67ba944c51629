//! Exact scalar arithmetic over the Gaussian rationals.
//!
//! Every computation in this crate happens in the field Q(i): complex
//! numbers whose real and imaginary parts are arbitrary-precision
//! rationals. There is no rounding anywhere, so equality of results is
//! structural equality of canonical forms.
//!
//! The text grammar for scalars (used in all JSON payloads) is
//! whitespace-free:
//!
//! ```text
//! R  ::= [-]digits[/digits]
//! GR ::= R | Ri | R±Ri | ±Ri
//! ```
//!
//! so `3/2`, `-1/4i` and `2+3i` all parse, and `Display` is the exact
//! inverse of `FromStr` on canonical values.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
///
/// `BigRational` maintains the canonical form relied on throughout:
/// fully reduced, positive denominator, zero stored as 0/1.
pub type Rational = BigRational;

/// A Gaussian rational `re + im·i`, the scalar type of the whole crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(value)), Rational::zero())
    }

    /// Real rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    /// Purely imaginary rational `(num/den)·i`. Panics if `den == 0`.
    pub fn imaginary_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            Rational::zero(),
            Rational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |x|² = re² + im², a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by the imaginary unit.
    pub fn times_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Exact division; `Err(DivisionByZero)` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

impl From<i64> for GaussianRational {
    fn from(value: i64) -> Self {
        Self::from_int(value)
    }
}

impl From<Rational> for GaussianRational {
    fn from(value: Rational) -> Self {
        Self::new(value, Rational::zero())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut scanner = Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let value = scanner.scalar()?;
        if scanner.pos != scanner.bytes.len() {
            return Err(scanner.error("unexpected trailing characters"));
        }
        Ok(value)
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("digits parse as BigInt"))
    }

    /// `digits[/digits]`, no sign.
    fn unsigned_rational(&mut self) -> Result<Rational> {
        let numerator = self.digits()?;
        if self.eat(b'/') {
            let den_pos = self.pos;
            let denominator = self.digits()?;
            if denominator.is_zero() {
                return Err(Error::Parse {
                    pos: den_pos,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(Rational::new(numerator, denominator))
        } else {
            Ok(Rational::from_integer(numerator))
        }
    }

    /// `[-]digits[/digits]`.
    fn rational(&mut self) -> Result<Rational> {
        let negative = self.eat(b'-');
        let value = self.unsigned_rational()?;
        Ok(if negative { -value } else { value })
    }

    fn scalar(&mut self) -> Result<GaussianRational> {
        if self.peek().is_none() {
            return Err(self.error("empty scalar"));
        }
        // Leading '+' is only legal for a purely imaginary value.
        if self.eat(b'+') {
            let value = self.rational()?;
            if !self.eat(b'i') {
                return Err(self.error("expected 'i' after explicitly signed value"));
            }
            return Ok(GaussianRational::new(Rational::zero(), value));
        }
        let first = self.rational()?;
        if self.eat(b'i') {
            return Ok(GaussianRational::new(Rational::zero(), first));
        }
        let sign = match self.peek() {
            None => return Ok(GaussianRational::new(first, Rational::zero())),
            Some(b'+') => 1,
            Some(b'-') => -1,
            Some(_) => return Err(self.error("expected '+', '-' or end of scalar")),
        };
        self.pos += 1;
        let magnitude = self.unsigned_rational()?;
        if !self.eat(b'i') {
            return Err(self.error("expected 'i' to close the imaginary part"));
        }
        let im = if sign < 0 { -magnitude } else { magnitude };
        Ok(GaussianRational::new(first, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    fn gauss(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
        GaussianRational::new(
            Rational::new(BigInt::from(re_num), BigInt::from(re_den)),
            Rational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    #[test]
    fn product_expands() {
        // (1+2i)(3−i) = 5+5i
        let x = gauss(1, 1, 2, 1);
        let y = gauss(3, 1, -1, 1);
        assert_eq!(&x * &y, gauss(5, 1, 5, 1));
    }

    #[test]
    fn divide_by_imaginary_unit_multiple() {
        // 1 / (2i) = −(1/2)i
        let one = GaussianRational::one();
        let denom = gauss(0, 1, 2, 1);
        assert_eq!(one.checked_div(&denom).unwrap(), gauss(0, 1, -1, 2));
    }

    #[test]
    fn conjugate_sum_is_real() {
        let x = gauss(1, 2, 1, 3);
        assert_eq!(&x + &x.conjugate(), GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = GaussianRational::one()
            .checked_div(&GaussianRational::zero())
            .unwrap_err();
        assert_eq!(err, Error::DivisionByZero);
        assert_eq!(GaussianRational::zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn parse_examples() {
        assert_eq!("3/2".parse::<GaussianRational>().unwrap(), q(3, 2));
        assert_eq!(
            "-1/4i".parse::<GaussianRational>().unwrap(),
            gauss(0, 1, -1, 4)
        );
        assert_eq!("2+3i".parse::<GaussianRational>().unwrap(), gauss(2, 1, 3, 1));
        assert_eq!("2-3i".parse::<GaussianRational>().unwrap(), gauss(2, 1, -3, 1));
        assert_eq!("+2i".parse::<GaussianRational>().unwrap(), gauss(0, 1, 2, 1));
        assert_eq!("0".parse::<GaussianRational>().unwrap(), GaussianRational::zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "3/".parse::<GaussianRational>().unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 2),
            other => panic!("unexpected error {other:?}"),
        }
        match "1/0".parse::<GaussianRational>().unwrap_err() {
            Error::Parse { pos, message } => {
                assert_eq!(pos, 2);
                assert!(message.contains("zero denominator"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        match "2+3".parse::<GaussianRational>().unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 3),
            other => panic!("unexpected error {other:?}"),
        }
        assert!("1 + 2i".parse::<GaussianRational>().is_err());
        assert!("+3".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(q(3, 2).to_string(), "3/2");
        assert_eq!(gauss(0, 1, -1, 4).to_string(), "-1/4i");
        assert_eq!(gauss(2, 1, 3, 1).to_string(), "2+3i");
        assert_eq!(gauss(2, 1, -3, 1).to_string(), "2-3i");
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12)
            .prop_map(|(num, den)| Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    proptest! {
        #[test]
        fn round_trip(x in arb_gaussian()) {
            let text = x.to_string();
            prop_assert_eq!(text.parse::<GaussianRational>().unwrap(), x);
        }

        #[test]
        fn multiplicative_inverse(x in arb_gaussian()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), GaussianRational::one());
        }

        #[test]
        fn field_axioms(x in arb_gaussian(), y in arb_gaussian(), z in arb_gaussian()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
