use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Rational;

/// Scalar field used for coefficients, curve data and linear algebra.
///
/// Exact fields compare with structural zero; the floating-point instances
/// exist for sequence-mode chains with irrational square roots and for
/// numeric evaluation of Baker–Akhiezer functions.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    /// Absolute size, used for pivoting and tolerance checks in inexact fields.
    /// Exact fields return 0 for zero and 1 otherwise.
    fn magnitude(&self) -> f64;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self / other`; panics on division by zero.
    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv().expect("division by zero in field")
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Zero test honouring a relative tolerance in inexact fields.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale.max(1.0)
        }
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Conversion of exact or numeric values into an evaluation field.
pub trait Embed<V> {
    fn embed(&self) -> V;
}

impl<V: Field> Embed<V> for Rational {
    fn embed(&self) -> V {
        V::from_rational(self)
    }
}

impl Embed<f64> for f64 {
    fn embed(&self) -> f64 {
        *self
    }
}

impl Embed<Complex64> for f64 {
    fn embed(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Embed<Complex64> for Complex64 {
    fn embed(&self) -> Complex64 {
        *self
    }
}
