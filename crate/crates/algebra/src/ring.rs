//! Minimal algebraic traits shared by the exact routines.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact (partial) division.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    /// `self / rhs` when the quotient exists in the ring, `None` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Rings containing ℚ, so rational scalars act on them.
pub trait QAlgebra: Ring {
    fn from_rational(q: &BigRational) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
    /// Non-negative rational content: gcd of all rational coefficients.
    fn content(&self) -> BigRational;
}

/// Rings with a total order compatible with the sign of their elements.
pub trait OrderedRing: Ring {
    fn sign(&self) -> Ordering;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
}

impl OrderedRing for BigInt {
    fn sign(&self) -> Ordering {
        self.cmp(&<BigInt as Zero>::zero())
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl QAlgebra for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
    fn content(&self) -> BigRational {
        self.abs()
    }
}

impl OrderedRing for BigRational {
    fn sign(&self) -> Ordering {
        self.cmp(&<BigRational as Zero>::zero())
    }
}

/// gcd of two non-negative rationals: gcd of numerators over lcm of denominators.
pub fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if Zero::is_zero(a) {
        return b.abs();
    }
    if Zero::is_zero(b) {
        return a.abs();
    }
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    BigRational::new(n, d)
}

/// Shorthand for building rationals in code and tests.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_by_squaring() {
        assert_eq!(int(3).pow(5), int(243));
        assert_eq!(rat(1, 2).pow(3), rat(1, 8));
        assert_eq!(Ring::pow(&int(7), 0), int(1));
    }

    #[test]
    fn exact_integer_division() {
        assert_eq!(int(12).div_exact(&int(4)), Some(int(3)));
        assert_eq!(int(12).div_exact(&int(5)), None);
        assert_eq!(int(12).div_exact(&int(0)), None);
    }

    #[test]
    fn rational_content_gcd() {
        assert_eq!(rational_gcd(&rat(2, 3), &rat(4, 9)), rat(2, 9));
        assert_eq!(rational_gcd(&rat(0, 1), &rat(-5, 2)), rat(5, 2));
    }
}
