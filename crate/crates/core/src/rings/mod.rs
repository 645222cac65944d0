//! Exact scalar fields and coefficient rings.
//!
//! Difference operators need a coefficient ring with an invertible shift
//! `σ(p)(n) = p(n+1)`; differential operators need a derivation.
//! Both are expressed as traits on top of [`Ring`].

mod dynamic;
mod exppoly;
mod field;
mod gaussian;
mod poly;
mod ratfunc;
mod rational;
mod window;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use dynamic::{derive, ring_arith, shift, AnyCoefficient, RingOp};
pub use exppoly::ExpPoly;
pub use field::{Embed, Field};
pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use ratfunc::RationalFunctionE;
pub use rational::Rational;
pub use window::WindowSeq;

/// Commutative coefficient ring that is an algebra over a scalar field.
pub trait Ring:
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
    type Scalar: Field;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Self::Scalar) -> Self;
    fn scale(&self, s: &Self::Scalar) -> Self;
    /// `Some(s)` when the element is the constant `s`.
    fn as_scalar(&self) -> Option<Self::Scalar>;
    /// The scalar `s` with `self = s·other`, if one exists.
    fn scalar_ratio(&self, other: &Self) -> Option<Self::Scalar>;
    /// Largest scalar magnitude among the stored values.
    fn magnitude(&self) -> f64;
    /// Short tag used in the operator JSON `"ring"` field.
    fn ring_name() -> &'static str;

    fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }
}

/// Ring with the shift automorphism σ.
pub trait DifferenceRing: Ring {
    /// σᵏ
    fn shift(&self, k: i64) -> Self;
}

/// Ring with a derivation δ.
pub trait DifferentialRing: Ring {
    fn derive(&self) -> Self;
}
