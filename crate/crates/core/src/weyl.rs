//! Homomorphisms `W₁ → A₁` given by a pair `[A, B] = A`, and the standard
//! automorphisms of `W₁` and `A₁`.

use crate::error::{Error, Result};
use crate::ore::{commutator, poly_eval, W1, A1};
use crate::rings::{Poly, Rational};

/// Images of `T` and `n`; `[A, B] = A` is checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPair {
    a: A1,
    b: A1,
}

impl GeneratorPair {
    pub fn new(a: A1, b: A1) -> Result<Self> {
        if commutator(&a, &b) != a {
            return Err(Error::PairInvariant);
        }
        Ok(GeneratorPair { a, b })
    }

    /// `(x, −x∂)`
    pub fn standard() -> Self {
        let x = A1::var();
        let b = -(&x * &A1::generator());
        GeneratorPair { a: x, b }
    }

    pub fn a(&self) -> &A1 {
        &self.a
    }

    pub fn b(&self) -> &A1 {
        &self.b
    }
}

/// `Σ p_j(n)Tʲ ↦ Σ p_j(B)·Aʲ`.
pub fn to_weyl(op: &W1, pair: &GeneratorPair) -> Result<A1> {
    if !op.is_w1() {
        return Err(Error::NotW1("negative power of T".into()));
    }
    let mut out = A1::zero();
    let mut a_pow = A1::one();
    let top = op.top_power().unwrap_or(0);
    for j in 0..=top {
        let p = op.coeff(j);
        if !p.is_zero() {
            out = &out + &(&poly_eval(p.coeffs(), &pair.b) * &a_pow);
        }
        a_pow = &a_pow * &pair.a;
    }
    Ok(out)
}

/// Image under `T ↦ T`, `n ↦ n + P(T)`, with `P` given by its coefficients
/// in `T`.
pub fn aut_w1(op: &W1, p: &Poly<Rational>) -> Result<W1> {
    if !op.is_w1() {
        return Err(Error::NotW1("negative power of T".into()));
    }
    let t = W1::generator();
    let n_img = &W1::var() + &poly_eval(p.coeffs(), &t);
    let mut out = W1::zero();
    for (&j, c) in op.terms() {
        out = &out + &(&poly_eval(c.coeffs(), &n_img) * &t.pow(j as u32));
    }
    Ok(out)
}

/// Generators of `Aut(A₁)`.
#[derive(Clone, Debug, PartialEq)]
pub enum A1Automorphism {
    /// `x ↦ αx + β∂`, `∂ ↦ γx + δ∂` with `αδ − βγ = 1`.
    Linear { alpha: Rational, beta: Rational, gamma: Rational, delta: Rational },
    /// `x ↦ x + P(∂)`, `∂ ↦ ∂`.
    ShiftX(Poly<Rational>),
    /// `x ↦ x`, `∂ ↦ ∂ + P(x)`.
    ShiftD(Poly<Rational>),
}

impl A1Automorphism {
    /// Images of `x` and `∂`.
    pub fn images(&self) -> Result<(A1, A1)> {
        let x = A1::var();
        let d = A1::generator();
        Ok(match self {
            A1Automorphism::Linear { alpha, beta, gamma, delta } => {
                let det = alpha.clone() * delta.clone() - beta.clone() * gamma.clone();
                if !det.is_one() {
                    return Err(Error::Determinant(det.to_string()));
                }
                (&x.scale(alpha) + &d.scale(beta), &x.scale(gamma) + &d.scale(delta))
            }
            A1Automorphism::ShiftX(p) => (&x + &poly_eval(p.coeffs(), &d), d),
            A1Automorphism::ShiftD(p) => (x.clone(), &d + &A1::from_coeff(p.clone())),
        })
    }
}

/// `Σ c_j(x)∂ʲ ↦ Σ c_j(φ(x))·φ(∂)ʲ`.
pub fn aut_a1(op: &A1, gen: &A1Automorphism) -> Result<A1> {
    let (xi, di) = gen.images()?;
    let mut out = A1::zero();
    for (&j, c) in op.terms() {
        out = &out + &(&poly_eval(c.coeffs(), &xi) * &di.pow(j as u32));
    }
    Ok(out)
}

/// `(φ(x), φ(−x∂))` for `φ` the composite of `gens`, first generator
/// applied first.
pub fn make_pair(gens: &[A1Automorphism]) -> Result<GeneratorPair> {
    let std = GeneratorPair::standard();
    let (mut a, mut b) = (std.a, std.b);
    for g in gens {
        a = aut_a1(&a, g)?;
        b = aut_a1(&b, g)?;
    }
    GeneratorPair::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::verify_commute;
    use crate::families::polynomial_a1_l2;

    fn c(v: &[i64]) -> Poly<Rational> {
        Poly::from_ints(v)
    }

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn x() -> A1 {
        A1::var()
    }

    fn d() -> A1 {
        A1::generator()
    }

    #[test]
    fn generators_map_to_standard_pair() {
        let p = GeneratorPair::standard();
        assert_eq!(to_weyl(&W1::generator(), &p).unwrap(), x());
        assert_eq!(to_weyl(&W1::var(), &p).unwrap(), -(&x() * &d()));
    }

    #[test]
    fn n_times_t() {
        // (−x∂)·x = −x²∂ − x
        let op = W1::monomial(c(&[0, 1]), 1);
        let img = to_weyl(&op, &GeneratorPair::standard()).unwrap();
        assert_eq!(img, A1::from_terms([(1, c(&[0, 0, -1])), (0, c(&[0, -1]))]));
    }

    #[test]
    fn negative_powers_rejected() {
        let op = W1::monomial(c(&[1]), -1);
        assert!(matches!(to_weyl(&op, &GeneratorPair::standard()), Err(Error::NotW1(_))));
    }

    #[test]
    fn image_of_l2_has_closed_form() {
        for (g, a2, a1, a0) in [(1, 1, 0, 0), (1, 1, 1, 0), (2, 2, -3, 5), (3, 1, 1, 1)] {
            let (a2, a1, a0) = (r(a2), r(a1), r(a0));
            let l2 = polynomial_a1_l2(g, &a2, &a1, &a0).unwrap();
            let img = to_weyl(&l2, &GeneratorPair::standard()).unwrap();
            let xd = &x() * &d();
            let inner = &(&(&x() + &(&xd * &xd).scale(&a2)) - &xd.scale(&a1)) + &A1::from_scalar(a0.clone());
            let gg = r((g * (g + 1)) as i64);
            let tail = &xd * &(&xd.scale(&a2) - &A1::from_scalar(a1.clone()));
            let expected = &(&inner * &inner) - &tail.scale(&(gg * a2.clone()));
            assert_eq!(img, expected, "g = {g}");
        }
    }

    #[test]
    fn linear_generator() {
        let swap = A1Automorphism::Linear { alpha: r(0), beta: r(1), gamma: r(-1), delta: r(0) };
        assert_eq!(aut_a1(&x(), &swap).unwrap(), d());
        let bad = A1Automorphism::Linear { alpha: r(2), beta: r(0), gamma: r(0), delta: r(1) };
        assert!(matches!(aut_a1(&x(), &bad), Err(Error::Determinant(_))));
    }

    #[test]
    fn shift_d_on_second_derivative() {
        // (∂ + x)² = ∂² + 2x∂ + x² + 1
        let img = aut_a1(&d().pow(2), &A1Automorphism::ShiftD(c(&[0, 1]))).unwrap();
        assert_eq!(img, A1::from_terms([(2, c(&[1])), (1, c(&[0, 2])), (0, c(&[1, 0, 1]))]));
    }

    #[test]
    fn pairs_from_automorphisms() {
        let id = make_pair(&[]).unwrap();
        assert_eq!(id, GeneratorPair::standard());
        let p = make_pair(&[A1Automorphism::ShiftD(c(&[0, 1]))]).unwrap();
        assert_eq!(p.a(), &x());
        assert_eq!(p.b(), &A1::from_terms([(1, c(&[0, -1])), (0, c(&[0, 0, -1]))]));
        let swap = A1Automorphism::Linear { alpha: r(0), beta: r(1), gamma: r(-1), delta: r(0) };
        let p = make_pair(&[swap]).unwrap();
        assert_eq!(p.a(), &d());
        assert_eq!(p.b(), &A1::from_terms([(1, c(&[0, 1])), (0, c(&[1]))]));
    }

    #[test]
    fn invalid_pair_rejected() {
        assert_eq!(GeneratorPair::new(x(), x()), Err(Error::PairInvariant));
    }

    #[test]
    fn generators_preserve_relations() {
        let gens = [
            A1Automorphism::Linear { alpha: r(2), beta: r(3), gamma: r(1), delta: r(2) },
            A1Automorphism::ShiftX(c(&[1, 0, 3])),
            A1Automorphism::ShiftD(c(&[0, -2, 0, 1])),
        ];
        for g in &gens {
            let (xi, di) = g.images().unwrap();
            assert_eq!(commutator(&di, &xi), A1::one());
        }
        let t = W1::generator();
        for p in [c(&[0, 1]), c(&[2, 0, 1]), c(&[0, 0, 0, -1])] {
            let n_img = aut_w1(&W1::var(), &p).unwrap();
            assert_eq!(commutator(&t, &n_img), t);
        }
        assert_eq!(aut_w1(&W1::var(), &c(&[0, 1])).unwrap(), &W1::var() + &t);
    }

    #[test]
    fn tiny_commuting_pair_transports() {
        let l2 = polynomial_a1_l2(1, &r(1), &r(1), &r(0)).unwrap();
        let l4 = &l2 * &l2;
        let p = make_pair(&[A1Automorphism::ShiftX(c(&[0, 1]))]).unwrap();
        let (a, b) = (to_weyl(&l2, &p).unwrap(), to_weyl(&l4, &p).unwrap());
        assert!(verify_commute(&a, &b).is_zero());
    }
}
