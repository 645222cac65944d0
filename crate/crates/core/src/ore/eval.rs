use num_complex::Complex64;

use super::DifferenceOperator;
use crate::error::{Error, Result};
use crate::rings::{Embed, ExpPoly, Field, Poly, Rational, WindowSeq};

/// Numeric value of a coefficient at an integer point.
pub trait EvalAt<V> {
    fn eval_at(&self, n: i64) -> Option<V>;
}

impl<V: Field> EvalAt<V> for Poly<Rational> {
    fn eval_at(&self, n: i64) -> Option<V> {
        Some(self.eval_in(&V::from_i64(n)))
    }
}

/// Exponential coefficients are evaluated with `E = e^{i/2}`.
impl EvalAt<Complex64> for ExpPoly {
    fn eval_at(&self, n: i64) -> Option<Complex64> {
        Some(self.eval_complex(n, Complex64::from_polar(1.0, 0.5)))
    }
}

impl<K: Field + Embed<V>, V: Field> EvalAt<V> for WindowSeq<K> {
    fn eval_at(&self, n: i64) -> Option<V> {
        self.get(n).map(|v| v.embed())
    }
}

/// Values `f(n)` on a contiguous range of integers.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence<V> {
    pub start: i64,
    pub values: Vec<V>,
}

impl<V: Clone> Sequence<V> {
    pub fn new(start: i64, values: Vec<V>) -> Self {
        Sequence { start, values }
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> V) -> Self {
        Sequence { start: lo, values: (lo..=hi).map(f).collect() }
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Result<&V> {
        usize::try_from(n - self.start)
            .ok()
            .and_then(|k| self.values.get(k))
            .ok_or(Error::WindowUnderflow { index: n, lo: self.start, hi: self.end() })
    }
}

/// `Σⱼ cⱼ(n)·f(n+j)`.
pub fn op_eval_at<R, V>(op: &DifferenceOperator<R>, f: &Sequence<V>, n: i64) -> Result<V>
where
    R: crate::rings::DifferenceRing + EvalAt<V>,
    V: Field,
{
    let mut acc = V::zero();
    for (&j, c) in op.terms() {
        let fv = f.get(n + j)?.clone();
        let cv = c
            .eval_at(n)
            .ok_or(Error::WindowUnderflow { index: n, lo: n, hi: n })?;
        acc = acc + cv * fv;
    }
    Ok(acc)
}

/// Terms `|cⱼ(n)·f(n+j)|` summed; the natural scale for relative residuals.
pub fn op_eval_scale<R, V>(op: &DifferenceOperator<R>, f: &Sequence<V>, n: i64) -> Result<f64>
where
    R: crate::rings::DifferenceRing + EvalAt<V>,
    V: Field,
{
    let mut acc = 0.0;
    for (&j, c) in op.terms() {
        let fv = f.get(n + j)?.clone();
        let cv = c
            .eval_at(n)
            .ok_or(Error::WindowUnderflow { index: n, lo: n, hi: n })?;
        acc += (cv * fv).magnitude();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::W1;

    fn seq() -> Sequence<Rational> {
        Sequence::from_fn(-2, 6, |n| Rational::from(n * n * n + 7))
    }

    #[test]
    fn shift_applies_forward() {
        let f = seq();
        let v: Rational = op_eval_at(&W1::generator(), &f, 2).unwrap();
        assert_eq!(&v, f.get(3).unwrap());
    }

    #[test]
    fn multiplication_by_coefficient() {
        let f = seq();
        let op = W1::from_coeff(Poly::from_ints(&[0, 0, 1]));
        let v: Rational = op_eval_at(&op, &f, 3).unwrap();
        assert_eq!(v, Rational::from(9) * f.get(3).unwrap().clone());
    }

    #[test]
    fn quadratic_family_coefficients_at_zero() {
        // T² + (2n²+2n+1)T + n⁴ − 2n² applied at n = 0 gives f(2) + f(1)
        let op = W1::from_terms([
            (2, Poly::from_ints(&[1])),
            (1, Poly::from_ints(&[1, 2, 2])),
            (0, Poly::from_ints(&[0, 0, -2, 0, 1])),
        ]);
        let f = seq();
        let v: Rational = op_eval_at(&op, &f, 0).unwrap();
        assert_eq!(v, f.get(2).unwrap().clone() + f.get(1).unwrap().clone());
    }

    #[test]
    fn underflow() {
        let f = seq();
        let r: Result<Rational> = op_eval_at(&W1::generator().pow(3), &f, 5);
        assert!(matches!(r, Err(Error::WindowUnderflow { .. })));
    }
}
