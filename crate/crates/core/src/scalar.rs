//! Scalar abstraction for the numeric kernel.
//!
//! The linear solves and probability computations are generic over any
//! field-like scalar. The decision procedures instantiate them at
//! arbitrary-precision rationals so that equalities like "measure = 1" are
//! exact; `f64` works too and is handy for quick numeric cross-checks.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::BigRational;
use num_traits::{One, Zero};

/// Field-like scalar: exact rationals or floats.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `1 / n` for a positive integer `n`.
    fn recip_usize(n: usize) -> Self;
}

impl Field for BigRational {
    fn recip_usize(n: usize) -> Self {
        BigRational::new(1.into(), (n as i64).into())
    }
}

impl Field for f64 {
    fn recip_usize(n: usize) -> Self {
        1.0 / n as f64
    }
}
