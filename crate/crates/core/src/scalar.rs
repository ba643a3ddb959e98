//! Scalar traits the exact-arithmetic layers are generic over.
//!
//! Everything that takes an order of vanishing needs a field with an exact
//! zero test. [`num_rational::BigRational`] is the intended instantiation;
//! fixed-width ratios such as `Ratio<i64>` work for small inputs, and floats
//! satisfy the bounds but make every integer invariant meaningless.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, Signed};

/// A commutative field with exact equality.
pub trait Field: Num + Clone + Debug + PartialEq + Neg<Output = Self> + Send + Sync {
    fn from_i64(value: i64) -> Self {
        let mut acc = Self::zero();
        let mut power = Self::one();
        let mut rest = value.unsigned_abs();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc + power.clone();
            }
            power = power.clone() + power;
            rest >>= 1;
        }
        if value < 0 {
            -acc
        } else {
            acc
        }
    }
}

impl<T> Field for T where T: Num + Clone + Debug + PartialEq + Neg<Output = T> + Send + Sync {}

/// An ordered field; needed wherever signs of determinants are read off.
pub trait OrderedField: Field + PartialOrd + Signed {}

impl<T> OrderedField for T where T: Field + PartialOrd + Signed {}

/// Real scalar used by the heat-kernel and theta-sum code.
pub trait Real: num_traits::Float + num_traits::FloatConst + Debug + Send + Sync {
    fn lit(value: f64) -> Self {
        Self::from(value).expect("literal representable in the float type")
    }
}

impl<T> Real for T where T: num_traits::Float + num_traits::FloatConst + Debug + Send + Sync {}
