use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{Field, GaussianRational, Poly, Rational};

/// Element of ℚ(i)(E), the field of rational functions in a transcendental
/// symbol `E` (standing for `e^{i/2}`).
///
/// Canonical form: numerator and denominator coprime, denominator monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionE {
    num: Poly<GaussianRational>,
    den: Poly<GaussianRational>,
}

impl RationalFunctionE {
    pub fn new(num: Poly<GaussianRational>, den: Poly<GaussianRational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canonical(num, den))
    }

    fn canonical(num: Poly<GaussianRational>, den: Poly<GaussianRational>) -> Self {
        if num.is_zero() {
            return RationalFunctionE { num, den: Poly::constant(GaussianRational::one()) };
        }
        let one = Poly::constant(GaussianRational::one());
        let (num, den) = if den == one {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g == one {
                (num, den)
            } else {
                (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
            }
        };
        let lead_inv = den.leading().unwrap().inv().unwrap();
        RationalFunctionE { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn from_poly(num: Poly<GaussianRational>) -> Self {
        RationalFunctionE { num, den: Poly::constant(GaussianRational::one()) }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    /// `E^k` for any integer `k`.
    pub fn e_pow(k: i64) -> Self {
        let mono = Poly::monomial(GaussianRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            RationalFunctionE { num: Poly::constant(GaussianRational::one()), den: mono }
        }
    }

    pub fn numer(&self) -> &Poly<GaussianRational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<GaussianRational> {
        &self.den
    }

    /// Numeric value at a chosen point `E = e`.
    pub fn eval_complex(&self, e: Complex64) -> Complex64 {
        let n = self.num.map(|c| c.to_complex()).eval(&e);
        let d = self.den.map(|c| c.to_complex()).eval(&e);
        n / d
    }

    pub fn eval_at_e(&self, e: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(e);
        d.inv().map(|di| self.num.eval(e) * di)
    }
}

impl Add for RationalFunctionE {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::canonical(&self.num + &o.num, self.den);
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::canonical(num, &self.den * &o.den)
    }
}

impl Sub for RationalFunctionE {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for RationalFunctionE {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        Self::canonical(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for RationalFunctionE {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunctionE { num: -self.num, den: self.den }
    }
}

impl Field for RationalFunctionE {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::from_poly(Poly::new(Vec::new()))
    }
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::canonical(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(GaussianRational::real(r.clone()))
    }
    fn magnitude(&self) -> f64 {
        if self.num.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for RationalFunctionE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.pretty("E");
        if self.den.degree() == Some(0) {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.den.pretty("E"))
        }
    }
}

impl fmt::Debug for RationalFunctionE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
