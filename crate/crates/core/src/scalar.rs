//! Scalar traits shared by polynomials, matrices and series.
//!
//! Everything in this crate is exact. The two coefficient domains are
//! arbitrary-precision integers and rationals; polynomials over either are
//! themselves rings with exact division, so the matrix code is written once
//! against [`Ring`] + [`ExactDiv`].

use std::fmt::{Debug, Display};
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity whose values are cheap enough to clone.
pub trait Ring:
    Clone + PartialEq + Debug + Send + Sync + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
{
}

/// Division that succeeds only when the quotient lies in the ring.
pub trait ExactDiv: Sized {
    /// Returns `q` with `self = divisor * q`, or `None` when no such `q`
    /// exists (including division by zero).
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }
}

/// Coefficient domain of a [`Poly`](crate::poly::Poly).
pub trait Coefficient: Ring + ExactDiv + Signed + Display + From<BigInt> {
    /// Embeds the coefficient into the rationals.
    fn to_rational(&self) -> BigRational;

    /// Converts back from a rational; `None` if the value is not representable.
    fn from_rational(q: &BigRational) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        q.is_integer().then(|| q.to_integer())
    }
}

impl Coefficient for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// A ring that contains the rationals, so series with `1/n!` weights make sense.
pub trait RationalAlgebra: Ring {
    fn from_rational(q: &BigRational) -> Self;

    fn scale(&self, q: &BigRational) -> Self {
        Self::from_rational(q) * self.clone()
    }
}

impl RationalAlgebra for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Falling factorial `(n]_k = n (n-1) ... (n-k+1)`; `(n]_0 = 1`.
pub fn falling_factorial(n: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling_factorial(n as i64, k) / factorial(k)
}

/// Floor of the `k`-th root of a non-negative integer.
pub fn floor_root(value: &BigInt, k: u32) -> BigInt {
    assert!(k >= 1, "root index must be positive");
    assert!(!value.is_negative(), "root of a negative integer");
    value.nth_root(k)
}

/// Ceiling of the `k`-th root of a non-negative integer.
pub fn ceil_root(value: &BigInt, k: u32) -> BigInt {
    let r = floor_root(value, k);
    if num_traits::pow(r.clone(), k as usize) == *value {
        r
    } else {
        r + 1
    }
}
