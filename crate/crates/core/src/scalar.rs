//! Scalar fields the pointwise algebra is generic over.
//!
//! Two instances are provided: `f64` for random-input property work and
//! [`Rational`] (arbitrary precision) for exact evaluation on basis data.

use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational numbers backed by big integers.
pub type Rational = BigRational;

/// A real scalar field usable for vectors, octonions and forms.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// The real `n`-th root, if it is representable in this field.
    ///
    /// Odd roots of negative numbers are negative. Even roots of negative
    /// numbers are `None`.
    fn real_root(&self, n: u32) -> Option<Self>;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn real_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if *self < 0.0 {
            if n % 2 == 0 {
                return None;
            }
            return Some(-(-self).powf(1.0 / n as f64));
        }
        Some(self.powf(1.0 / n as f64))
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn real_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let negative = self.is_negative();
        if negative && n % 2 == 0 {
            return None;
        }
        let numer = exact_integer_root(&self.numer().abs(), n)?;
        let denom = exact_integer_root(&self.denom().abs(), n)?;
        let root = Rational::new(numer, denom);
        Some(if negative { -root } else { root })
    }
}

fn exact_integer_root(value: &BigInt, n: u32) -> Option<BigInt> {
    debug_assert!(value.sign() != Sign::Minus);
    let root = value.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == *value {
        Some(root)
    } else {
        None
    }
}

/// `Rational` from a small fraction.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Sign factor `(-1)^odd` as a scalar.
pub(crate) fn sign_scalar<S: Scalar>(negative: bool) -> S {
    if negative {
        -S::one()
    } else {
        S::one()
    }
}
