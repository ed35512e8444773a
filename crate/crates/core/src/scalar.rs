//! Coefficient rings for q-series.
//!
//! Series and φ-polynomials are generic over [`Scalar`]. Everything that only
//! needs ring operations (products, inversion of units, U_p, eta products)
//! works for machine integers, big integers, rationals and floats alike.
//! Divisibility questions additionally need [`ExactInteger`].

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with unit, as far as q-series arithmetic is concerned.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_i64(v: i64) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// Two-sided inverse if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    #[inline]
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += &a.mul_ref(b);
    }

    #[inline]
    fn mul_sub_assign(&mut self, a: &Self, b: &Self) {
        *self -= &a.mul_ref(b);
    }

    #[inline]
    fn mul_i64(&self, k: i64) -> Self {
        self.mul_ref(&Self::from_i64(k))
    }
}

/// Integers with exact divisibility, p-adic valuation and a decimal text form.
pub trait ExactInteger: Scalar + Ord + Integer + Signed + Display + FromStr {
    /// ν_p(self); `None` for zero (infinite valuation).
    fn valuation(&self, p: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let p = Self::from_i64(p as i64);
        let mut x = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                return Some(v);
            }
            x = q;
            v += 1;
        }
    }

    fn int_pow(base: u32, exp: u32) -> Self {
        let b = Self::from_i64(base as i64);
        (0..exp).fold(Self::one(), |acc, _| acc.mul_ref(&b))
    }
}

macro_rules! impl_machine_int {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            #[inline]
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }

            fn unit_inverse(&self) -> Option<Self> {
                match *self {
                    1 => Some(1),
                    -1 => Some(-1),
                    _ => None,
                }
            }
        }

        impl ExactInteger for $t {}
    )*};
}

impl_machine_int!(i64, i128);

macro_rules! impl_float {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            #[inline]
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }

            fn unit_inverse(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / self)
            }

            #[inline]
            fn mul_add_assign(&mut self, a: &Self, b: &Self) {
                *self = a.mul_add(*b, *self);
            }
        }
    )*};
}

impl_float!(f32, f64);

impl Scalar for BigInt {
    #[inline]
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    #[inline]
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    #[inline]
    fn mul_i64(&self, k: i64) -> Self {
        self * k
    }
}

impl ExactInteger for BigInt {
    fn valuation(&self, p: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        if p == 2 {
            return self.trailing_zeros().map(|t| t as u32);
        }
        // Strip p^k with the largest k whose power fits in a u32 first.
        let mut chunk = p;
        let mut chunk_exp = 1u32;
        while let Some(next) = chunk.checked_mul(p) {
            chunk = next;
            chunk_exp += 1;
        }
        let mut x = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = x.div_rem(&BigInt::from(chunk));
            if !r.is_zero() {
                break;
            }
            x = q;
            v += chunk_exp;
        }
        let p_big = BigInt::from(p);
        loop {
            let (q, r) = x.div_rem(&p_big);
            if !r.is_zero() {
                return Some(v);
            }
            x = q;
            v += 1;
        }
    }

    fn int_pow(base: u32, exp: u32) -> Self {
        num_traits::pow(BigInt::from(base), exp as usize)
    }
}

impl Scalar for BigRational {
    #[inline]
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    #[inline]
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_agree_across_integer_types() {
        for n in [-729i64, -90, 1, 2, 90, 8748, 177147, 3 * 3 * 3 * 3 * 5 * 7] {
            let small = n.valuation(3);
            assert_eq!(small, (n as i128).valuation(3));
            assert_eq!(small, BigInt::from(n).valuation(3));
        }
        assert_eq!(0i64.valuation(5), None);
        assert_eq!(BigInt::zero().valuation(5), None);
        assert_eq!(BigInt::from(90).valuation(3), Some(2));
        assert_eq!(BigInt::int_pow(3, 40).valuation(3), Some(40));
        assert_eq!(
            (BigInt::int_pow(13, 25) * BigInt::from(7)).valuation(13),
            Some(25)
        );
        assert_eq!(BigInt::from(96).valuation(2), Some(5));
    }

    #[test]
    fn units() {
        assert_eq!(BigInt::from(-1).unit_inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).unit_inverse(), None);
        assert_eq!(2i64.unit_inverse(), None);
        assert_eq!(4.0f64.unit_inverse(), Some(0.25));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(half.unit_inverse(), Some(BigRational::from_i64(2)));
    }
}
