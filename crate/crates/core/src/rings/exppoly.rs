use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{DifferenceRing, Field, Poly, Rational, RationalFunctionE, Ring};

/// Exponential polynomial `Σ_f t^f · p_f(n)` with `t = e^{in/2}` and
/// `p_f ∈ ℚ(i)(E)[n]`.
///
/// Since `t(n+1) = E·t(n)` with `E = e^{i/2}`, the shift acts on the
/// frequency-`f` component as `p_f(n) ↦ E^f · p_f(n+1)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<i64, Poly<RationalFunctionE>>,
}

impl ExpPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Poly<RationalFunctionE>)>) -> Self {
        let mut out = ExpPoly::default();
        for (f, p) in terms {
            out.add_term(f, p);
        }
        out
    }

    /// `c · t^f`
    pub fn monomial(freq: i64, c: RationalFunctionE) -> Self {
        Self::from_terms([(freq, Poly::constant(c))])
    }

    /// `cos(k·n) = (t^{2k} + t^{-2k})/2`
    pub fn cos(k: i64) -> Self {
        let half = RationalFunctionE::from_rational(&Rational::new(1, 2));
        if k == 0 {
            return Self::monomial(0, RationalFunctionE::one());
        }
        Self::monomial(2 * k, half.clone()) + Self::monomial(-2 * k, half)
    }

    fn add_term(&mut self, f: i64, p: Poly<RationalFunctionE>) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&f) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(f, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Poly<RationalFunctionE>> {
        &self.terms
    }

    pub fn max_abs_frequency(&self) -> i64 {
        self.terms.keys().map(|f| f.abs()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.values().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Value at integer `n`, with `E` specialised to the complex number `e`
    /// (so `t = e^n`).
    pub fn eval_complex(&self, n: i64, e: Complex64) -> Complex64 {
        let nn = Complex64::new(n as f64, 0.0);
        self.terms
            .iter()
            .map(|(f, p)| {
                let pv = p.map(|c| c.eval_complex(e)).eval(&nn);
                e.powi((f * n) as i32) * pv
            })
            .sum()
    }
}

impl Add for ExpPoly {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (f, p) in o.terms {
            self.add_term(f, p);
        }
        self
    }
}

impl Sub for ExpPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ExpPoly {
    type Output = Self;
    fn neg(self) -> Self {
        ExpPoly { terms: self.terms.into_iter().map(|(f, p)| (f, -p)).collect() }
    }
}

impl Mul for ExpPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = ExpPoly::default();
        for (f, p) in &self.terms {
            for (g, q) in &o.terms {
                out.add_term(f + g, p * q);
            }
        }
        out
    }
}

impl Ring for ExpPoly {
    type Scalar = RationalFunctionE;

    fn zero() -> Self {
        ExpPoly::default()
    }
    fn one() -> Self {
        Self::monomial(0, RationalFunctionE::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_scalar(s: RationalFunctionE) -> Self {
        Self::monomial(0, s)
    }
    fn scale(&self, s: &RationalFunctionE) -> Self {
        Self::from_terms(self.terms.iter().map(|(f, p)| (*f, p.scale(s))))
    }
    fn as_scalar(&self) -> Option<RationalFunctionE> {
        if self.terms.is_empty() {
            return Some(RationalFunctionE::zero());
        }
        match self.terms.get(&0) {
            Some(p) if self.terms.len() == 1 && p.degree() == Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }
    fn scalar_ratio(&self, other: &Self) -> Option<RationalFunctionE> {
        let (f, p) = other.terms.iter().next_back()?;
        if self.terms.is_empty() {
            return Some(RationalFunctionE::zero());
        }
        let q = self.terms.get(f)?;
        let s = q.leading()?.div(p.leading()?);
        (self.clone() - other.scale(&s)).is_zero().then_some(s)
    }
    fn magnitude(&self) -> f64 {
        if self.terms.is_empty() {
            0.0
        } else {
            1.0
        }
    }
    fn ring_name() -> &'static str {
        "exp_poly"
    }
}

impl DifferenceRing for ExpPoly {
    fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self::from_terms(
            self.terms.iter().map(|(f, p)| (*f, p.shift(k).scale(&RationalFunctionE::e_pow(f * k)))),
        )
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(fr, p)| {
                if *fr == 0 {
                    format!("[{}]", p.pretty("n"))
                } else {
                    format!("t^{fr}*[{}]", p.pretty("n"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> RationalFunctionE {
        RationalFunctionE::from_rational(&Rational::new(1, 2))
    }

    #[test]
    fn frequency_addition() {
        let a = ExpPoly::monomial(2, half());
        let b = ExpPoly::monomial(-2, half());
        let quarter = RationalFunctionE::from_rational(&Rational::new(1, 4));
        assert_eq!(a * b, ExpPoly::monomial(0, quarter));
    }

    #[test]
    fn shift_definition() {
        let p = Poly::new(vec![RationalFunctionE::one(), RationalFunctionE::one()]); // 1 + n
        let a = ExpPoly::from_terms([(2, p.clone())]);
        let expected = ExpPoly::from_terms([(2, p.shift(1).scale(&RationalFunctionE::e_pow(2)))]);
        assert_eq!(a.shift(1), expected);
        assert_eq!(a.shift(-1).shift(1), a);
    }

    #[test]
    fn cos_matches_numeric() {
        let e = Complex64::from_polar(1.0, 0.5);
        let c = ExpPoly::cos(1);
        for n in -5..5 {
            assert!((c.eval_complex(n, e).re - (n as f64).cos()).abs() < 1e-13);
            assert!((c.shift(1).eval_complex(n, e).re - ((n + 1) as f64).cos()).abs() < 1e-13);
        }
    }
}
