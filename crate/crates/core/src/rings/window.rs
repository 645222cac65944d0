use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{DifferenceRing, Embed, Field, Ring};

/// Sequence `n ↦ a(n)` known on a finite window of integers, or a constant
/// known everywhere.
///
/// Arithmetic is pointwise on the intersection of the operands' windows;
/// `σᵏ` moves the window by `-k`. This is the coefficient ring for operators
/// whose coefficients are given only as values (arbitrary functional
/// parameters).
#[derive(Clone, PartialEq)]
pub enum WindowSeq<K> {
    Const(K),
    Window { start: i64, values: Vec<K> },
}

impl<K: Field> WindowSeq<K> {
    pub fn new(start: i64, values: Vec<K>) -> Self {
        WindowSeq::Window { start, values }
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> K) -> Self {
        WindowSeq::new(lo, (lo..=hi).map(f).collect())
    }

    /// Value at `n`, if known.
    pub fn get(&self, n: i64) -> Option<&K> {
        match self {
            WindowSeq::Const(c) => Some(c),
            WindowSeq::Window { start, values } => {
                let k = n.checked_sub(*start)?;
                usize::try_from(k).ok().and_then(|k| values.get(k))
            }
        }
    }

    /// Closed index range `[lo, hi]`; `None` for constants, and `lo > hi`
    /// means the window is empty.
    pub fn range(&self) -> Option<(i64, i64)> {
        match self {
            WindowSeq::Const(_) => None,
            WindowSeq::Window { start, values } => Some((*start, start + values.len() as i64 - 1)),
        }
    }

    pub fn map<V: Field>(&self, f: impl Fn(&K) -> V) -> WindowSeq<V> {
        match self {
            WindowSeq::Const(c) => WindowSeq::Const(f(c)),
            WindowSeq::Window { start, values } => {
                WindowSeq::Window { start: *start, values: values.iter().map(f).collect() }
            }
        }
    }

    pub fn embed<V: Field>(&self) -> WindowSeq<V>
    where
        K: Embed<V>,
    {
        self.map(|v| v.embed())
    }

    fn zip(self, o: Self, f: impl Fn(K, K) -> K) -> Self {
        match (self, o) {
            (WindowSeq::Const(a), WindowSeq::Const(b)) => WindowSeq::Const(f(a, b)),
            (WindowSeq::Const(a), WindowSeq::Window { start, values }) => WindowSeq::Window {
                start,
                values: values.into_iter().map(|v| f(a.clone(), v)).collect(),
            },
            (WindowSeq::Window { start, values }, WindowSeq::Const(b)) => WindowSeq::Window {
                start,
                values: values.into_iter().map(|v| f(v, b.clone())).collect(),
            },
            (a @ WindowSeq::Window { .. }, b @ WindowSeq::Window { .. }) => {
                let (alo, ahi) = a.range().unwrap();
                let (blo, bhi) = b.range().unwrap();
                let lo = alo.max(blo);
                let hi = ahi.min(bhi);
                let values = (lo..=hi)
                    .map(|n| f(a.get(n).unwrap().clone(), b.get(n).unwrap().clone()))
                    .collect();
                WindowSeq::Window { start: lo, values }
            }
        }
    }
}

impl<K: Field> Add for WindowSeq<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
}

impl<K: Field> Sub for WindowSeq<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
}

impl<K: Field> Mul for WindowSeq<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.zip(o, |a, b| a * b)
    }
}

impl<K: Field> Neg for WindowSeq<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|v| -v.clone())
    }
}

impl<K: Field> Ring for WindowSeq<K> {
    type Scalar = K;

    fn zero() -> Self {
        WindowSeq::Const(K::zero())
    }
    fn one() -> Self {
        WindowSeq::Const(K::one())
    }
    fn is_zero(&self) -> bool {
        match self {
            WindowSeq::Const(c) => c.is_zero(),
            WindowSeq::Window { values, .. } => values.iter().all(Field::is_zero),
        }
    }
    fn from_scalar(s: K) -> Self {
        WindowSeq::Const(s)
    }
    fn scale(&self, s: &K) -> Self {
        self.map(|v| v.clone() * s.clone())
    }
    fn as_scalar(&self) -> Option<K> {
        match self {
            WindowSeq::Const(c) => Some(c.clone()),
            WindowSeq::Window { values, .. } => {
                let first = values.first()?;
                values.iter().all(|v| v == first).then(|| first.clone())
            }
        }
    }
    fn scalar_ratio(&self, other: &Self) -> Option<K> {
        if let (WindowSeq::Const(s), WindowSeq::Const(o)) = (self, other) {
            return if o.is_zero() { s.is_zero().then(K::zero) } else { Some(s.div(o)) };
        }
        // pointwise ratio must be one constant over the common window
        let (lo, hi) = (self.clone() * other.clone()).range()?;
        let mut ratio: Option<K> = None;
        for n in lo..=hi {
            let (a, b) = (self.get(n)?, other.get(n)?);
            if b.is_zero() {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            let r = a.div(b);
            match &ratio {
                None => ratio = Some(r),
                Some(r0) if (r0.clone() - r.clone()).is_negligible(r0.magnitude(), 1e-12) => {}
                Some(_) => return None,
            }
        }
        Some(ratio.unwrap_or_else(K::zero))
    }
    fn magnitude(&self) -> f64 {
        match self {
            WindowSeq::Const(c) => c.magnitude(),
            WindowSeq::Window { values, .. } => values.iter().map(Field::magnitude).fold(0.0, f64::max),
        }
    }
    fn ring_name() -> &'static str {
        if K::EXACT {
            "sequence"
        } else {
            "sequence_f64"
        }
    }
}

impl<K: Field> DifferenceRing for WindowSeq<K> {
    fn shift(&self, k: i64) -> Self {
        match self {
            WindowSeq::Const(c) => WindowSeq::Const(c.clone()),
            WindowSeq::Window { start, values } => {
                WindowSeq::Window { start: start - k, values: values.clone() }
            }
        }
    }
}

impl<K: fmt::Debug> fmt::Debug for WindowSeq<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowSeq::Const(c) => write!(f, "Const({c:?})"),
            WindowSeq::Window { start, values } => write!(f, "Window@{start}{values:?}"),
        }
    }
}
