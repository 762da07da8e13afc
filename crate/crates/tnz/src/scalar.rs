//! Exact complex scalars with arbitrary-precision rational parts.
//!
//! Every value in this crate is a Gaussian rational: a complex number whose
//! real and imaginary parts are `BigRational`s. All arithmetic is exact; there
//! is no floating point anywhere, so a contraction result is zero exactly when
//! the mathematical value is zero. `num-rational` keeps each part in reduced
//! canonical form (gcd 1, positive denominator), so `==` is semantic equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction `num/den`. Panics if `den` is zero.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real and `>= 0`.
    pub fn is_nonneg_real(&self) -> bool {
        self.im.is_zero() && !self.re.is_negative()
    }

    /// Real and `> 0`.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = re^2 + im^2`, always a non-negative rational.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse. Panics on zero; callers guard.
    pub fn inverse(&self) -> Self {
        let d = self.abs_sq();
        assert!(!d.is_zero(), "inverse of zero scalar");
        Scalar::new(&self.re / &d, -&self.im / &d)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = &*self * &rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

/// Canonical text form: "0", "p/q", "r/s i", or "p/q + r/s i" / "p/q - r/s i".
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - {} i", self.re, -&self.im)
        } else {
            write!(f, "{} + {} i", self.re, self.im)
        }
    }
}

// Debug falls back to the display form; raw numer/denom pairs are unreadable
// in test output.
impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(num: i64, den: i64) -> Scalar {
        Scalar::from_fraction(num, den)
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = s(1, 3);
        let sum = &third + &(&third + &third);
        assert!(sum.is_one());

        let a = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        );
        let b = a.inverse();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn complex_multiplication() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = Scalar::new(
            BigRational::from_integer(BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-1)),
        );
        assert_eq!(z.abs_sq(), BigRational::from_integer(BigInt::from(5)));
        assert_eq!(&z * &z.conj(), Scalar::from_int(5));
    }

    #[test]
    fn display_canonical_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_int(6).to_string(), "6");
        assert_eq!(s(-3, 2).to_string(), "-3/2");
        assert_eq!(Scalar::i().to_string(), "1 i");
        let z = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
        );
        assert_eq!(z.to_string(), "1/2 - 1/3 i");
    }

    #[test]
    fn nonnegativity_predicates() {
        assert!(Scalar::zero().is_nonneg_real());
        assert!(!Scalar::zero().is_positive_real());
        assert!(s(2, 7).is_positive_real());
        assert!(!s(-2, 7).is_nonneg_real());
        assert!(!Scalar::i().is_nonneg_real());
    }
}
