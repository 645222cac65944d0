//! Noncommutative operator arithmetic over Ore extensions.
//!
//! [`DifferenceOperator`] uses `T·c = σ(c)·T` and admits negative powers of
//! `T`; [`DifferentialOperator`] uses `∂·c = c·∂ + c'` with nonnegative
//! powers only.

mod eval;
mod operator;

use std::fmt;

pub use eval::{op_eval_at, op_eval_scale, EvalAt, Sequence};
pub use operator::{Derivation, DifferenceOperator, DifferentialOperator, OreKind, OreOperator, Shift};

use crate::rings::{Field, Poly, Rational, Ring};

/// `[a, b] = a·b − b·a`
pub fn commutator<R: Ring, K: OreKind<R>>(a: &OreOperator<R, K>, b: &OreOperator<R, K>) -> OreOperator<R, K> {
    &(a * b) - &(b * a)
}

/// Horner evaluation of `Σ cᵢ Lⁱ` for ascending scalar coefficients `cᵢ`.
pub fn poly_eval<R: Ring, K: OreKind<R>>(coeffs: &[R::Scalar], l: &OreOperator<R, K>) -> OreOperator<R, K> {
    let mut acc = OreOperator::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * l) + &OreOperator::from_scalar(c.clone());
    }
    acc
}

/// Same as [`poly_eval`], with a polynomial over the scalar field.
pub fn poly_eval_poly<R, K>(f: &Poly<R::Scalar>, l: &OreOperator<R, K>) -> OreOperator<R, K>
where
    R: Ring,
    K: OreKind<R>,
{
    poly_eval(f.coeffs(), l)
}

/// Elements of W₁: difference operators with polynomial coefficients and
/// nonnegative powers of `T`.
pub type W1 = DifferenceOperator<Poly<Rational>>;

/// Elements of A₁: differential operators with polynomial coefficients.
pub type A1 = DifferentialOperator<Poly<Rational>>;

impl<K: Field> DifferenceOperator<Poly<K>> {
    /// An element of W₁ uses only nonnegative powers of `T`.
    pub fn is_w1(&self) -> bool {
        self.bottom_power().is_none_or(|p| p >= 0)
    }

    /// The operator of multiplication by the coefficient variable.
    pub fn var() -> Self {
        Self::from_coeff(Poly::var())
    }

    /// Largest coefficient degree.
    pub fn max_coeff_degree(&self) -> usize {
        self.terms().values().filter_map(|c| c.degree()).max().unwrap_or(0)
    }
}

impl<K: Field> DifferentialOperator<Poly<K>> {
    /// The operator of multiplication by `x`.
    pub fn var() -> Self {
        Self::from_coeff(Poly::var())
    }
}

impl<R: Ring, K: OreKind<R>> OreOperator<R, K> {
    /// Human-readable form, highest power first.
    pub fn pretty_with(&self, coeff: impl Fn(&R) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .iter()
            .rev()
            .map(|(p, c)| {
                let mono = match p {
                    0 => String::new(),
                    1 => K::SYMBOL.to_string(),
                    _ => format!("{}^{p}", K::SYMBOL),
                };
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format!("({})", coeff(c)),
                    (false, true) => mono,
                    (false, false) => format!("({})*{mono}", coeff(c)),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<K> fmt::Display for OreOperator<Poly<Rational>, K>
where
    K: OreKind<Poly<Rational>>,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty_with(|c| c.pretty(K::VAR)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> W1 {
        W1::var()
    }

    fn t() -> W1 {
        W1::generator()
    }

    fn c(v: &[i64]) -> Poly<Rational> {
        Poly::from_ints(v)
    }

    #[test]
    fn shift_past_n() {
        // T·n = (n+1)T
        assert_eq!(&t() * &n(), W1::monomial(c(&[1, 1]), 1));
    }

    #[test]
    fn product_example() {
        // (T+n)(T−n) = T² − T − n²
        let lhs = &(&t() + &n()) * &(&t() - &n());
        let rhs = W1::from_terms([(2, c(&[1])), (1, c(&[-1])), (0, c(&[0, 0, -1]))]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_past_x() {
        let d = A1::generator();
        let x = A1::var();
        // ∂·x = x∂ + 1
        assert_eq!(&d * &x, A1::from_terms([(1, c(&[0, 1])), (0, c(&[1]))]));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator(&t(), &n()), t());
        let x = A1::var();
        let mxd = -(&x * &A1::generator());
        assert_eq!(commutator(&x, &mxd), x);
        assert_eq!(commutator(&t().pow(2), &n()), W1::monomial(c(&[2]), 2));
    }

    #[test]
    fn poly_eval_examples() {
        let r = |v: i64| Rational::from(v);
        assert_eq!(poly_eval(&[r(0), r(0), r(1)], &t()), t().pow(2));
        assert_eq!(poly_eval(&[r(1), r(1)], &t().pow(2)), &t().pow(2) + &W1::one());
        assert_eq!(poly_eval(&[r(0), r(0), r(0), r(1)], &t().pow(2)), t().pow(6));
    }

    #[test]
    fn negative_powers() {
        let tinv = W1::monomial(c(&[1]), -1);
        assert_eq!(&t() * &tinv, W1::one());
        // T^{-1}·n = (n−1)T^{-1}
        assert_eq!(&tinv * &n(), W1::monomial(c(&[-1, 1]), -1));
        assert!(!tinv.is_w1());
        assert_eq!((&t() + &tinv).order(), 2);
    }

    #[test]
    fn pretty_printer() {
        let op = &t().pow(2) + &n();
        assert_eq!(op.to_string(), "T^2 + (n)");
    }
}
