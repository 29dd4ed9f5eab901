//! Minimal commutative-ring vocabulary shared by the exact field types.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
}

pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Cubic polynomial `c3 x^3 + c2 x^2 + c1 x + c0` over a coefficient type `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicPoly<T> {
    /// Ascending: `coeffs[i]` multiplies `x^i`.
    pub coeffs: [T; 4],
}

impl<T: Clone> CubicPoly<T> {
    pub fn new(c0: T, c1: T, c2: T, c3: T) -> Self {
        Self {
            coeffs: [c0, c1, c2, c3],
        }
    }

    pub fn leading(&self) -> &T {
        &self.coeffs[3]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> CubicPoly<U> {
        CubicPoly {
            coeffs: std::array::from_fn(|i| f(&self.coeffs[i])),
        }
    }

    /// Horner evaluation; needs no zero element.
    pub fn eval(&self, x: &T) -> T
    where
        T: Add<Output = T> + Mul<Output = T>,
    {
        let mut acc = self.coeffs[3].clone();
        for c in self.coeffs[..3].iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<T: fmt::Display> fmt::Display for CubicPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})x^3 + ({})x^2 + ({})x + ({})",
            self.coeffs[3], self.coeffs[2], self.coeffs[1], self.coeffs[0]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn horner_matches_direct() {
        let p = CubicPoly::new(int(-1), int(-2), int(1), int(1));
        // 8 + 4 - 4 - 1
        assert_eq!(p.eval(&int(2)), int(7));
        assert_eq!(p.eval(&int(0)), int(-1));
    }
}
