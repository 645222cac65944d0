use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{DifferenceRing, DifferentialRing, Embed, Field, Rational, Ring};

/// Dense univariate polynomial with ascending coefficients.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::new(vec![K::zero(), K::one()])
    }

    pub fn monomial(c: K, deg: usize) -> Self {
        let mut v = vec![K::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// `x + k`
    pub fn linear_shift(k: K) -> Self {
        Poly::new(vec![k, K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &K) -> Self {
        if s.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluate after embedding the coefficients into another field.
    pub fn eval_in<V: Field>(&self, x: &V) -> V
    where
        K: Embed<V>,
    {
        self.coeffs.iter().rev().fold(V::zero(), |acc, c| acc * x.clone() + c.embed())
    }

    /// `p(x + k)` by Horner's rule in the polynomial ring.
    pub fn taylor_shift(&self, k: &K) -> Self {
        let lin = Poly::linear_shift(k.clone());
        let mut acc = Poly::new(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * K::from_i64(i as i64))
                .collect(),
        )
    }

    /// `self(other)`
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::new(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem[rem.len() - 1].clone() * lead_inv.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - f.clone() * c.clone();
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            // keep remainders monic to slow down coefficient growth
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(K::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<V: Field>(&self, f: impl Fn(&K) -> V) -> Poly<V> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, K: Field> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &'a Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a, K: Field> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &'a Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a, K: Field> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &'a Poly<K>) -> Poly<K> {
        if self.is_zero() || o.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: Poly<K>) -> Poly<K> {
        &self + &o
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: Poly<K>) -> Poly<K> {
        &self - &o
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: Poly<K>) -> Poly<K> {
        &self * &o
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<K: Field> Ring for Poly<K> {
    type Scalar = K;

    fn zero() -> Self {
        Poly::new(Vec::new())
    }
    fn one() -> Self {
        Poly::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_scalar(s: K) -> Self {
        Poly::constant(s)
    }
    fn scale(&self, s: &K) -> Self {
        Poly::scale(self, s)
    }
    fn as_scalar(&self) -> Option<K> {
        match self.coeffs.len() {
            0 => Some(K::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
    fn scalar_ratio(&self, other: &Self) -> Option<K> {
        let lo = other.leading()?;
        let Some(ls) = self.leading() else {
            return Some(K::zero());
        };
        if self.degree() != other.degree() {
            return None;
        }
        let s = ls.div(lo);
        let diff = self - &other.scale(&s);
        diff.coeffs.iter().all(|c| c.is_negligible(self.magnitude(), 1e-12)).then_some(s)
    }
    fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(Field::magnitude).fold(0.0, f64::max)
    }
    fn ring_name() -> &'static str {
        "poly"
    }
}

impl<K: Field> DifferenceRing for Poly<K> {
    fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self.taylor_shift(&K::from_i64(k))
    }
}

impl<K: Field> DifferentialRing for Poly<K> {
    fn derive(&self) -> Self {
        self.derivative()
    }
}

impl Poly<Rational> {
    /// Convenience constructor from small integers.
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| Rational::from(v)).collect())
    }
}

impl<K: Field + fmt::Display> Poly<K> {
    /// Human-readable form in the given variable name, highest degree first.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else {
                format!("({cs})*{mono}")
            });
        }
        parts.join(" + ")
    }
}

impl<K: fmt::Debug> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn addition_example() {
        // (n^2 + 1) + (n - 1) = n^2 + n
        assert_eq!(p(&[1, 0, 1]) + p(&[-1, 1]), p(&[0, 1, 1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(1), p(&[1, 2, 1]));
        let q = p(&[3, -1, 4, 2]);
        assert_eq!(q.shift(-1).shift(1), q);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derive(), p(&[0, 0, 3]));
        assert_eq!(p(&[1]).derive(), p(&[]));
        assert_eq!(p(&[0, 1, 1]).derive(), p(&[1, 2]));
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&a, &p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn trimmed_and_ratio() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[2, 4]).scalar_ratio(&p(&[1, 2])), Some(Rational::from(2)));
        assert_eq!(p(&[2, 5]).scalar_ratio(&p(&[1, 2])), None);
    }
}
