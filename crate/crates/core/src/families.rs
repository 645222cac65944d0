//! Explicit constructors for second-order operators with commuting partners
//! of odd order.

use crate::error::{Error, Result};
use crate::ore::{DifferenceOperator, W1};
use crate::rings::{ExpPoly, Field, GaussianRational, Poly, Rational, RationalFunctionE, Ring, WindowSeq};
use crate::spectral::{chain_from_gamma_g1, CurveData, DressingChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// Sequence coefficients from a genus-one dressing chain.
    Elliptic,
    /// `cos n` coefficients.
    Trigonometric,
    /// `α₂n² + α₀` shifted coefficients.
    Polynomial,
    /// `α₂n² + α₁n + α₀` shifted coefficients.
    PolynomialA1,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Elliptic => "elliptic",
            FamilyTag::Trigonometric => "trig",
            FamilyTag::Polynomial => "poly",
            FamilyTag::PolynomialA1 => "poly-a1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "elliptic" => FamilyTag::Elliptic,
            "trig" => FamilyTag::Trigonometric,
            "poly" => FamilyTag::Polynomial,
            "poly-a1" => FamilyTag::PolynomialA1,
            _ => return Err(Error::parse(format!("unknown family {s:?}"))),
        })
    }
}

/// Parameters shared by the family constructors; fields irrelevant to a tag
/// are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub tag: FamilyTag,
    pub genus: usize,
    pub r1: Rational,
    pub alpha0: Rational,
    pub alpha1: Rational,
    pub alpha2: Rational,
    /// `c₀, c₁, c₂` of the genus-one curve (elliptic only).
    pub curve: Vec<Rational>,
    pub gamma: Vec<Rational>,
    pub sqrt_f: Vec<Rational>,
    pub window_start: i64,
}

impl FamilyParams {
    pub fn new(tag: FamilyTag, genus: usize) -> Self {
        FamilyParams {
            tag,
            genus,
            r1: Rational::one(),
            alpha0: Rational::zero(),
            alpha1: Rational::zero(),
            alpha2: Rational::one(),
            curve: vec![Rational::zero(); 3],
            gamma: Vec::new(),
            sqrt_f: Vec::new(),
            window_start: 0,
        }
    }
}

fn check_genus(g: usize) -> Result<Rational> {
    if g == 0 {
        return Err(Error::invalid("genus must be at least 1"));
    }
    Ok(Rational::from((g * (g + 1)) as i64))
}

/// `(T + α₂n² + α₀)² − g(g+1)α₂²n²`.
pub fn polynomial_l2(g: usize, alpha2: &Rational, alpha0: &Rational) -> Result<W1> {
    polynomial_a1_l2(g, alpha2, &Rational::zero(), alpha0)
}

/// `(T + α₂n² + α₁n + α₀)² − g(g+1)α₂n(α₂n + α₁)`.
pub fn polynomial_a1_l2(g: usize, alpha2: &Rational, alpha1: &Rational, alpha0: &Rational) -> Result<W1> {
    let gg = check_genus(g)?;
    if alpha2.is_zero() {
        return Err(Error::invalid("alpha2 must be nonzero"));
    }
    let p = Poly::new(vec![alpha0.clone(), alpha1.clone(), alpha2.clone()]);
    let base = &W1::generator() + &W1::from_coeff(p);
    let tail = Poly::new(vec![Rational::zero(), alpha1.clone(), alpha2.clone()]).scale(&(gg * alpha2.clone()));
    Ok(&(&base * &base) - &W1::from_coeff(tail))
}

/// `(T + r₁cos n)² + ½r₁²sec²(g+½)sin(g)sin(g+1)cos(2n)` over `ℚ(i)(E)`.
pub fn trigonometric_l2(g: usize, r1: &Rational) -> Result<DifferenceOperator<ExpPoly>> {
    check_genus(g)?;
    if r1.is_zero() {
        return Err(Error::invalid("r1 must be nonzero"));
    }
    let r1e = RationalFunctionE::constant(GaussianRational::real(r1.clone()));
    let k = trigonometric_constant(g) * r1e.clone() * r1e.clone();
    let cos1 = ExpPoly::cos(1).scale(&r1e);
    let cos2 = ExpPoly::cos(2).scale(&k);
    let base = &DifferenceOperator::generator() + &DifferenceOperator::from_coeff(cos1);
    Ok(&(&base * &base) + &DifferenceOperator::from_coeff(cos2))
}

/// `½sec²(g+½)sin(g)sin(g+1)` as an element of `ℚ(i)(E)`, `E = e^{i/2}`.
pub fn trigonometric_constant(g: usize) -> RationalFunctionE {
    let g = g as i64;
    let e = RationalFunctionE::e_pow;
    let two = RationalFunctionE::from_i64(2);
    let two_i = two.clone() * RationalFunctionE::i();
    let sin = |k: i64| (e(2 * k) - e(-2 * k)).div(&two_i);
    let sec = two.div(&(e(2 * g + 1) + e(-(2 * g + 1))));
    let half = RationalFunctionE::one().div(&two);
    half * sec.clone() * sec * sin(g) * sin(g + 1)
}

/// `(T + U_n)² + W_n` from a genus-one chain; returns the chain as well.
pub fn elliptic_l2<K: Field>(
    curve: &CurveData<K>,
    start: i64,
    gamma: &[K],
    sqrt_f: &[K],
) -> Result<(DifferenceOperator<WindowSeq<K>>, DressingChain<K>)> {
    let chain = chain_from_gamma_g1(curve, start, gamma, sqrt_f)?;
    Ok((chain.l2_operator(), chain))
}

/// `V_n = (ε_n² − F(γ_n)) / ((γ_n − γ_{n−1})(γ_{n+1} − γ_n))` for the
/// interior indices of `γ` (positions `1..len−1`).
pub fn kn_reduction_check<K: Field>(curve: &CurveData<K>, gamma: &[K], eps: &[K]) -> Result<Vec<K>> {
    if curve.genus != 1 {
        return Err(Error::invalid("reduction check is for genus-one curves"));
    }
    if gamma.len() != eps.len() {
        return Err(Error::invalid("gamma and epsilon lengths differ"));
    }
    for k in 1..gamma.len() {
        if (gamma[k].clone() - gamma[k - 1].clone()).is_zero() {
            return Err(Error::GammaCollision(k as i64 - 1));
        }
    }
    let f = curve.polynomial();
    Ok((1..gamma.len().saturating_sub(1))
        .map(|k| {
            let num = eps[k].clone() * eps[k].clone() - f.eval(&gamma[k]);
            let den = (gamma[k].clone() - gamma[k - 1].clone()) * (gamma[k + 1].clone() - gamma[k].clone());
            num.div(&den)
        })
        .collect())
}

/// `(T + U_n + V_nT⁻¹)² + W_n` with `U_n = −(ε_n+ε_{n+1})/(γ_n−γ_{n+1})`,
/// `W_n = −c₂ − γ_n − γ_{n+1}` and `V_n` from [`kn_reduction_check`], on
/// `[start, start + len − 1]`.
pub fn kn_l4<K: Field>(curve: &CurveData<K>, start: i64, gamma: &[K], eps: &[K]) -> Result<DifferenceOperator<WindowSeq<K>>> {
    let v = kn_reduction_check(curve, gamma, eps)?;
    let len = gamma.len() - 1;
    let u: Vec<K> = (0..len)
        .map(|k| (-(eps[k].clone() + eps[k + 1].clone())).div(&(gamma[k].clone() - gamma[k + 1].clone())))
        .collect();
    let c2 = curve.coeffs[2].clone();
    let w: Vec<K> = (0..len).map(|k| -c2.clone() - gamma[k].clone() - gamma[k + 1].clone()).collect();
    let t = DifferenceOperator::generator();
    let base = &(&t + &DifferenceOperator::from_coeff(WindowSeq::new(start, u)))
        + &DifferenceOperator::monomial(WindowSeq::new(start + 1, v), -1);
    Ok(&(&base * &base) + &DifferenceOperator::from_coeff(WindowSeq::new(start, w)))
}

/// Build the second-order operator for exact parameter sets (all tags
/// except elliptic, which has sequence coefficients).
pub fn build_polynomial(params: &FamilyParams) -> Result<W1> {
    match params.tag {
        FamilyTag::Polynomial => polynomial_l2(params.genus, &params.alpha2, &params.alpha0),
        FamilyTag::PolynomialA1 => polynomial_a1_l2(params.genus, &params.alpha2, &params.alpha1, &params.alpha0),
        other => Err(Error::invalid(format!("{} is not a polynomial family", other.name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::{find_monic_commuting, verify_commute, AnsatzSpec, SolverLimits};
    use crate::ore::EvalAt;
    use num_complex::Complex64;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn c(v: &[i64]) -> Poly<Rational> {
        Poly::from_ints(v)
    }

    #[test]
    fn genus_one_expansion() {
        let l = polynomial_l2(1, &r(1), &r(0)).unwrap();
        let expected = W1::from_terms([(2, c(&[1])), (1, c(&[1, 2, 2])), (0, c(&[0, 0, -2, 0, 1]))]);
        assert_eq!(l, expected);
    }

    #[test]
    fn genus_two_expansion() {
        let l = polynomial_l2(2, &r(1), &r(0)).unwrap();
        let expected = W1::from_terms([(2, c(&[1])), (1, c(&[1, 2, 2])), (0, c(&[0, 0, -6, 0, 1]))]);
        assert_eq!(l, expected);
    }

    #[test]
    fn zero_alpha2_rejected() {
        assert!(polynomial_l2(1, &r(0), &r(0)).is_err());
        assert!(polynomial_a1_l2(1, &r(0), &r(1), &r(0)).is_err());
    }

    #[test]
    fn alpha1_zero_specializes() {
        for g in 1..4 {
            assert_eq!(
                polynomial_a1_l2(g, &r(2), &r(0), &r(3)).unwrap(),
                polynomial_l2(g, &r(2), &r(3)).unwrap()
            );
        }
    }

    #[test]
    fn alpha1_expansion() {
        // (T+n²+n)² − 2n(n+1): T² + ((n+1)²+(n+1) + n²+n)T + (n²+n)² − 2n² − 2n
        let l = polynomial_a1_l2(1, &r(1), &r(1), &r(0)).unwrap();
        let expected = W1::from_terms([(2, c(&[1])), (1, c(&[2, 4, 2])), (0, c(&[0, -2, -1, 2, 1]))]);
        assert_eq!(l, expected);
    }

    #[test]
    fn trig_shift_coefficient() {
        let l = trigonometric_l2(1, &r(1)).unwrap();
        let t1 = l.coeff(1);
        let half = RationalFunctionE::one().div(&RationalFunctionE::from_i64(2));
        for f in [2, -2] {
            let expected = half.clone() * (RationalFunctionE::one() + RationalFunctionE::e_pow(f));
            assert_eq!(t1.terms()[&f], Poly::constant(expected));
        }
        assert!(trigonometric_l2(1, &r(0)).is_err());
    }

    #[test]
    fn trig_constant_numeric() {
        let e = Complex64::from_polar(1.0, 0.5);
        for g in 1..4 {
            let gf = g as f64;
            let sec = 1.0 / (gf + 0.5).cos();
            let want = 0.5 * sec * sec * gf.sin() * (gf + 1.0).sin();
            let got = trigonometric_constant(g).eval_complex(e);
            assert!((got - want).norm() < 1e-12 * want.abs().max(1.0), "g = {g}");
        }
        let k = trigonometric_constant(1);
        assert_eq!((k.clone() * k.clone()).div(&k), k);
    }

    #[test]
    fn trig_coefficients_numeric() {
        let l = trigonometric_l2(2, &Rational::new(3, 2)).unwrap();
        let k = {
            let sec = 1.0 / 2.5_f64.cos();
            0.5 * sec * sec * 2.0_f64.sin() * 3.0_f64.sin() * 2.25
        };
        for n in -5..5 {
            let nf = n as f64;
            let t1: Complex64 = l.coeff(1).eval_at(n).unwrap();
            let t0: Complex64 = l.coeff(0).eval_at(n).unwrap();
            assert!((t1 - 1.5 * (nf.cos() + (nf + 1.0).cos())).norm() < 1e-12);
            let want0 = 2.25 * nf.cos().powi(2) + k * (2.0 * nf).cos();
            assert!((t0 - want0).norm() < 1e-11);
        }
    }

    #[test]
    fn elliptic_readback() {
        let curve = CurveData::pure_power(1);
        let ps = [1, 2, 3, 4, 5];
        let gamma: Vec<Rational> = ps.iter().map(|&p| r(p * p)).collect();
        let sf: Vec<Rational> = ps.iter().map(|&p| r(p * p * p)).collect();
        let (l, chain) = elliptic_l2(&curve, 0, &gamma, &sf).unwrap();
        for n in 0..4 {
            let w = chain.w_at(n).unwrap().clone();
            assert_eq!(w, -(gamma[n as usize].clone() + gamma[n as usize + 1].clone()));
        }
        assert!(l.is_monic());
        let e = elliptic_l2(&curve, 0, &[r(4), r(4)], &[r(8), r(8)]);
        assert!(matches!(e, Err(Error::GammaCollision(0))));
    }

    #[test]
    fn kn_values() {
        let curve = CurveData::new(1, vec![r(1), r(0), r(0)]).unwrap();
        let gamma = vec![r(0), r(2), r(3), r(5)];
        let f = curve.polynomial();
        assert_eq!(f.eval(&r(2)), r(9));
        // ε² = F(γ) at position 1, ε = 0 with F(3) = 28 at position 2
        let eps = vec![r(1), r(3), r(0), r(0)];
        let v = kn_reduction_check(&curve, &gamma, &eps).unwrap();
        assert_eq!(v[0], Rational::zero());
        assert!(!v[1].is_zero());
        assert!(kn_reduction_check(&curve, &[r(1), r(1), r(2)], &[r(0), r(0), r(0)]).is_err());
    }

    #[test]
    fn kn_operator_reduces_to_chain_operator() {
        let curve = CurveData::pure_power(1);
        let ps = [1, 2, 3, 4, 5, 6];
        let gamma: Vec<Rational> = ps.iter().map(|&p| r(p * p)).collect();
        let sf: Vec<Rational> = ps.iter().map(|&p| r(p * p * p)).collect();
        let l4 = kn_l4(&curve, 0, &gamma, &sf).unwrap();
        let (l2, _) = elliptic_l2(&curve, 0, &gamma, &sf).unwrap();
        // V ≡ 0 leaves no T⁻¹, T⁻² terms
        assert_eq!(l4.bottom_power(), Some(0));
        for p in 0..=2 {
            let (a, b) = (l4.coeff(p), l2.coeff(p));
            let (lo, hi) = a.range().unwrap_or((0, 0));
            for n in lo..=hi {
                if let (Some(x), Some(y)) = (a.get(n), b.get(n)) {
                    assert_eq!(x, y, "power {p}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn genus_one_commutes_with_solver_cubic() {
        let l2 = polynomial_l2(1, &r(1), &r(0)).unwrap();
        let l3 = find_monic_commuting(&l2, &AnsatzSpec::new(3).degree(6), &SolverLimits::default()).unwrap();
        assert!(verify_commute(&l2, &l3).is_zero());
        assert!(verify_commute(&l2, &(&l2 * &l3)).is_zero());
        assert!(l3.is_monic() && l3.top_power() == Some(3));
    }
}
