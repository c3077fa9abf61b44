//! Coefficient rings.
//!
//! Everything downstream is generic over [`Coeff`]: a commutative ring with
//! unity expressed through the `num-traits` vocabulary plus owned arithmetic
//! operators. The concrete rings used by the crate are
//!
//! * integers and rationals (`BigInt`, `BigRational`),
//! * Laurent polynomials in the generator `u = -L^(1/2)` over either of those
//!   ([`Laurent`]),
//! * reduced fractions of such polynomials ([`RatWeight`]),
//! * truncated descending Laurent expansions ([`TruncLaurent`]).

mod laurent;
mod rational;
mod trunc_laurent;

pub use laurent::{Laurent, Scalar};
pub use rational::{poly_divrem, poly_gcd, rf_reduce, RatWeight};
pub use trunc_laurent::{expand_at_infinity, TruncLaurent};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative ring with unity.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the unique ring map `Z -> Self`.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// The multiplicative inverse, when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

/// Rings carrying the Adams operations of the pre-lambda structure fixed by
/// `sigma_n(u) = u^n`. For Laurent polynomials in `u` this is `u -> u^k`.
pub trait Adams: Coeff {
    fn adams(&self, k: u32) -> Self;
}

/// Rings containing the rationals: division by a nonzero integer.
pub trait DivInt: Coeff {
    fn div_int(&self, k: i64) -> Self;
}

impl Coeff for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Adams for BigInt {
    fn adams(&self, _k: u32) -> Self {
        self.clone()
    }
}

impl Coeff for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Adams for BigRational {
    fn adams(&self, _k: u32) -> Self {
        self.clone()
    }
}

impl DivInt for BigRational {
    fn div_int(&self, k: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
}

/// Generalized binomial coefficient `e (e-1) ... (e-r+1) / r!` for any integer `e`.
pub fn binomial_signed(e: &BigInt, r: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= e - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_signed_matches_negative_binomial_series() {
        // (1-x)^{-3} = sum C(r+2, 2) x^r, i.e. (-1)^r binom(-3, r)
        let e = BigInt::from(-3);
        let got: Vec<i64> = (0..5)
            .map(|r| {
                let b = binomial_signed(&e, r);
                let sign = if r % 2 == 0 { 1 } else { -1 };
                i64::try_from(b * sign).unwrap()
            })
            .collect();
        assert_eq!(got, vec![1, 3, 6, 10, 15]);
        assert_eq!(binomial_signed(&BigInt::from(4), 2), BigInt::from(6));
        assert_eq!(binomial_signed(&BigInt::from(2), 3), BigInt::zero());
    }

    #[test]
    fn integer_units() {
        assert_eq!(BigInt::from(-1).unit_inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).unit_inverse(), None);
    }
}
