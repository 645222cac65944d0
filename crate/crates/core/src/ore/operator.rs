use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rings::{DifferenceRing, DifferentialRing, Field, Ring};

/// Commutation rule `X^i · c = Σ c_k X^{p_k}` for the generator `X` of an
/// Ore extension.
pub trait OreKind<R: Ring>: Copy + fmt::Debug + Send + Sync + 'static {
    /// `"difference"` or `"differential"`.
    const ALGEBRA: &'static str;
    /// Generator name used by the pretty printer.
    const SYMBOL: &'static str;
    /// Coefficient variable name used by the pretty printer.
    const VAR: &'static str;

    /// Normal-ordered expansion of `X^power · c` as `(power', coeff)` pairs.
    fn commute_past(power: i64, c: &R) -> Vec<(i64, R)>;
}

/// Shift operator `T` with `T·c = σ(c)·T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shift;

/// Derivation `∂` with `∂·c = c·∂ + c'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derivation;

impl<R: DifferenceRing> OreKind<R> for Shift {
    const ALGEBRA: &'static str = "difference";
    const SYMBOL: &'static str = "T";
    const VAR: &'static str = "n";

    fn commute_past(power: i64, c: &R) -> Vec<(i64, R)> {
        vec![(power, c.shift(power))]
    }
}

impl<R: DifferentialRing> OreKind<R> for Derivation {
    const ALGEBRA: &'static str = "differential";
    const SYMBOL: &'static str = "D";
    const VAR: &'static str = "x";

    /// Leibniz: `∂^i·c = Σ_k C(i,k) c^{(k)} ∂^{i-k}`.
    fn commute_past(power: i64, c: &R) -> Vec<(i64, R)> {
        assert!(power >= 0, "negative powers of the derivation are not defined");
        let mut out = Vec::with_capacity(power as usize + 1);
        let mut deriv = c.clone();
        let mut binom: i64 = 1;
        for k in 0..=power {
            if deriv.is_zero() {
                break;
            }
            out.push((power - k, deriv.scale(&R::Scalar::from_i64(binom))));
            deriv = deriv.derive();
            binom = binom * (power - k) / (k + 1);
        }
        out
    }
}

/// Finite sum `Σ c_j X^j` in normal order (coefficients on the left).
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// operators.
pub struct OreOperator<R, K> {
    terms: BTreeMap<i64, R>,
    kind: PhantomData<K>,
}

pub type DifferenceOperator<R> = OreOperator<R, Shift>;
pub type DifferentialOperator<R> = OreOperator<R, Derivation>;

impl<R: Clone, K> Clone for OreOperator<R, K> {
    fn clone(&self) -> Self {
        OreOperator { terms: self.terms.clone(), kind: PhantomData }
    }
}

impl<R: PartialEq, K> PartialEq for OreOperator<R, K> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<R: Ring, K: OreKind<R>> OreOperator<R, K> {
    pub fn zero() -> Self {
        OreOperator { terms: BTreeMap::new(), kind: PhantomData }
    }

    pub fn one() -> Self {
        Self::from_coeff(R::one())
    }

    pub fn from_coeff(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_scalar(s: R::Scalar) -> Self {
        Self::from_coeff(R::from_scalar(s))
    }

    pub fn monomial(c: R, power: i64) -> Self {
        let mut op = Self::zero();
        op.add_term(power, c);
        op
    }

    /// The generator `X` itself.
    pub fn generator() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut op = Self::zero();
        for (p, c) in terms {
            op.add_term(p, c);
        }
        op
    }

    pub fn add_term(&mut self, power: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&power) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(power, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, R> {
        &self.terms
    }

    pub fn coeff(&self, power: i64) -> R {
        self.terms.get(&power).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest power present and its coefficient.
    pub fn top(&self) -> Option<(i64, &R)> {
        self.terms.iter().next_back().map(|(p, c)| (*p, c))
    }

    pub fn top_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn bottom_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// `max j − min j` over the stored powers; zero for the zero operator.
    pub fn order(&self) -> i64 {
        match (self.bottom_power(), self.top_power()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.top().is_some_and(|(_, c)| c.is_one())
    }

    pub fn scale(&self, s: &R::Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (*p, c.scale(s))))
    }

    /// Left multiplication by a coefficient.
    pub fn left_mul_coeff(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, a)| (*p, c.clone() * a.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> OreOperator<S, K>
    where
        K: OreKind<S>,
    {
        OreOperator::from_terms(self.terms.iter().map(|(p, c)| (*p, f(c))))
    }

    /// Largest scalar magnitude among the coefficients.
    pub fn magnitude(&self) -> f64 {
        self.terms.values().map(Ring::magnitude).fold(0.0, f64::max)
    }

    /// Every coefficient is negligible at the given relative tolerance
    /// (structural zero in exact rings).
    pub fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        if R::Scalar::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale.max(1.0)
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &o.terms {
                for (p, c) in K::commute_past(i, b) {
                    out.add_term(p + j, a.clone() * c);
                }
            }
        }
        out
    }
}

impl<'a, R: Ring, K: OreKind<R>> Mul<&'a OreOperator<R, K>> for &'a OreOperator<R, K> {
    type Output = OreOperator<R, K>;
    fn mul(self, o: &'a OreOperator<R, K>) -> OreOperator<R, K> {
        self.mul_ref(o)
    }
}

impl<R: Ring, K: OreKind<R>> Mul for OreOperator<R, K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<'a, R: Ring, K: OreKind<R>> Add<&'a OreOperator<R, K>> for &'a OreOperator<R, K> {
    type Output = OreOperator<R, K>;
    fn add(self, o: &'a OreOperator<R, K>) -> OreOperator<R, K> {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(*p, c.clone());
        }
        out
    }
}

impl<R: Ring, K: OreKind<R>> Add for OreOperator<R, K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (p, c) in o.terms {
            self.add_term(p, c);
        }
        self
    }
}

impl<'a, R: Ring, K: OreKind<R>> Sub<&'a OreOperator<R, K>> for &'a OreOperator<R, K> {
    type Output = OreOperator<R, K>;
    fn sub(self, o: &'a OreOperator<R, K>) -> OreOperator<R, K> {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(*p, -c.clone());
        }
        out
    }
}

impl<R: Ring, K: OreKind<R>> Sub for OreOperator<R, K> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (p, c) in o.terms {
            self.add_term(p, -c);
        }
        self
    }
}

impl<R: Ring, K: OreKind<R>> Neg for OreOperator<R, K> {
    type Output = Self;
    fn neg(self) -> Self {
        OreOperator { terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(), kind: PhantomData }
    }
}

impl<R: fmt::Debug, K> fmt::Debug for OreOperator<R, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
