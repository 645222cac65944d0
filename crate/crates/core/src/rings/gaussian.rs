use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use super::{Field, Rational};
use crate::error::Error;

/// Element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        GaussianRational { re, im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Field for GaussianRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianRational::default()
    }
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().recip()?;
        let c = self.conj();
        Some(GaussianRational { re: &c.re * &n, im: &c.im * &n })
    }
    fn from_rational(r: &Rational) -> Self {
        GaussianRational::real(r.clone())
    }
    fn magnitude(&self) -> f64 {
        if Field::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for GaussianRational {
    /// `a/b+c/di`, always with both parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::real(s.parse()?));
        };
        // the split is the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (body[..k].parse()?, parse_imag(&body[k..])?),
            None => (Rational::zero(), parse_imag(body)?),
        };
        Ok(GaussianRational { re, im })
    }
}

fn parse_imag(s: &str) -> Result<Rational, Error> {
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => s.strip_prefix('+').unwrap_or(s).parse(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(Rational::from(a), Rational::from(b))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, g(-1, 0));
    }

    #[test]
    fn inverse() {
        let z = g(3, -4);
        assert_eq!(z.clone() * z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["1/2+3/4i", "-1/2-3/4i", "0+1i", "5+0i", "-7/3+0i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!("2".parse::<GaussianRational>().unwrap(), g(2, 0));
        assert_eq!("-i".parse::<GaussianRational>().unwrap(), g(0, -1));
        assert_eq!("3i".parse::<GaussianRational>().unwrap(), g(0, 3));
    }
}
