use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Q;

/// Coefficient field for [`super::XPoly`] and the exact linear algebra.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_q(v: &Q) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for Q {
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
}
