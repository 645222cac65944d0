use crate::commutant::verify_commute_tol;
use crate::error::{Error, Result};
use crate::ore::{OreKind, OreOperator};
use crate::rings::{Embed, Field, Poly, Ring};

/// Hyperelliptic curve `w² = F(z)` with `F` monic of degree `2g+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveData<K> {
    pub genus: usize,
    /// `c₀, …, c_{2g}` (the leading coefficient 1 is implicit).
    pub coeffs: Vec<K>,
}

impl<K: Field> CurveData<K> {
    pub fn new(genus: usize, coeffs: Vec<K>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::invalid("genus must be at least 1"));
        }
        if coeffs.len() != 2 * genus + 1 {
            return Err(Error::invalid(format!(
                "genus {genus} needs {} coefficients, got {}",
                2 * genus + 1,
                coeffs.len()
            )));
        }
        Ok(CurveData { genus, coeffs })
    }

    /// The curve `w² = z^{2g+1}`.
    pub fn pure_power(genus: usize) -> Self {
        CurveData { genus, coeffs: vec![K::zero(); 2 * genus + 1] }
    }

    pub fn polynomial(&self) -> Poly<K> {
        let mut c = self.coeffs.clone();
        c.push(K::one());
        Poly::new(c)
    }

    pub fn eval<V: Field>(&self, z: &V) -> V
    where
        K: Embed<V>,
    {
        self.polynomial().eval_in(z)
    }

    /// `|w² − F(z)|` and the scale `max(1, |F(z)|)` it is compared against.
    pub fn residual<V: Field>(&self, p: &CurvePoint<V>) -> (f64, f64)
    where
        K: Embed<V>,
    {
        let f = self.eval(&p.z);
        let r = p.w.clone() * p.w.clone() - f.clone();
        (r.magnitude(), f.magnitude().max(1.0))
    }

    pub fn contains<V: Field>(&self, p: &CurvePoint<V>, tol: f64) -> bool
    where
        K: Embed<V>,
    {
        let (r, scale) = self.residual(p);
        if V::EXACT {
            r == 0.0
        } else {
            r < tol * scale
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<V> {
    pub z: V,
    pub w: V,
}

impl<V: Field> CurvePoint<V> {
    pub fn new(z: V, w: V) -> Self {
        CurvePoint { z, w }
    }

    /// Rejects points with `|w² − F(z)| ≥ 10⁻¹⁰·max(1, |F(z)|)` (exact
    /// fields require equality).
    pub fn on_curve<K: Field + Embed<V>>(curve: &CurveData<K>, z: V, w: V) -> Result<Self> {
        let p = CurvePoint { z, w };
        if curve.contains(&p, 1e-10) {
            Ok(p)
        } else {
            Err(Error::invalid("point is not on the curve"))
        }
    }
}

/// `F` with `Lodd² = F(L₂)`, read off by peeling powers of `L₂` from the top.
pub fn curve_from_pair<R: Ring, K: OreKind<R>>(
    l2: &OreOperator<R, K>,
    lodd: &OreOperator<R, K>,
) -> Result<CurveData<R::Scalar>> {
    if !verify_commute_tol(l2, lodd, 1e-9).is_zero() {
        return Err(Error::NotCommuting);
    }
    let (k, m) = top_powers(l2, lodd)?;
    if (2 * m) % k != 0 || ((2 * m) / k) % 2 == 0 {
        return Err(Error::invalid(format!("orders {k} and {m} do not fit w² = F(z) with deg F odd")));
    }
    let top = (2 * m / k) as usize;
    let genus = (top - 1) / 2;
    let powers = powers_of(l2, top);
    let mut residual = lodd * lodd;
    let mut c = vec![R::Scalar::zero(); top + 1];
    for i in (0..=top).rev() {
        let Some((p, lc)) = residual.top() else { break };
        let target = i as i64 * k;
        if p > target {
            return Err(Error::Residual(format!("term of order {p} cannot be matched by powers of L2")));
        }
        if p < target {
            continue;
        }
        let basis_lc = powers[i].top().expect("nonzero power").1;
        let ratio = lc
            .scalar_ratio(basis_lc)
            .ok_or_else(|| Error::Residual(format!("order-{p} coefficient is not a scalar multiple")))?;
        residual = &residual - &powers[i].scale(&ratio);
        c[i] = ratio;
    }
    if !residual.is_negligible(lodd.magnitude().powi(2), 1e-9) {
        return Err(Error::Residual("nonzero remainder after peeling".into()));
    }
    if !c[top].is_one() {
        return Err(Error::NonMonic(format!("leading curve coefficient is {:?}", c[top])));
    }
    c.truncate(top);
    CurveData::new(genus, c)
}

/// Replace an odd-order commuting `X` by the unique `X − P(L₂)` whose square
/// is a polynomial in `L₂`.
///
/// Writes `X² = A(L₂) + X·B(L₂)` by peeling from the top with the basis
/// `L₂ⁱ`, `X·L₂ⁱ`; then `(X − B(L₂)/2)² = A(L₂) + B(L₂)²/4`.
pub fn normalize_odd<R: Ring, K: OreKind<R>>(
    l2: &OreOperator<R, K>,
    x: &OreOperator<R, K>,
) -> Result<OreOperator<R, K>> {
    let (k, m) = top_powers(l2, x)?;
    let mut residual = x * x;
    let mut b: Vec<(usize, R::Scalar)> = Vec::new();
    let mut l2_pow = vec![OreOperator::one()];
    let mut x_pow = vec![x.clone()];
    while let Some((p, lc)) = residual.top() {
        let (basis, slot) = if p >= 0 && p % k == 0 {
            let i = (p / k) as usize;
            while l2_pow.len() <= i {
                let next = l2_pow.last().unwrap() * l2;
                l2_pow.push(next);
            }
            (l2_pow[i].clone(), None)
        } else if p >= m && (p - m) % k == 0 {
            let i = ((p - m) / k) as usize;
            while x_pow.len() <= i {
                let next = x_pow.last().unwrap() * l2;
                x_pow.push(next);
            }
            (x_pow[i].clone(), Some(i))
        } else {
            return Err(Error::Residual(format!("order {p} is outside the span of L2 and X")));
        };
        let ratio = lc
            .scalar_ratio(basis.top().expect("nonzero").1)
            .ok_or_else(|| Error::Residual(format!("order-{p} coefficient is not a scalar multiple")))?;
        residual = &residual - &basis.scale(&ratio);
        if residual.is_negligible(x.magnitude().powi(2), 1e-12) {
            residual = OreOperator::zero();
        }
        if let Some(i) = slot {
            b.push((i, ratio));
        }
    }
    let half = R::Scalar::from_i64(2).inv().expect("characteristic zero");
    let mut out = x.clone();
    for (i, coeff) in b {
        let mut p = OreOperator::one();
        for _ in 0..i {
            p = &p * l2;
        }
        out = &out - &p.scale(&(coeff * half.clone()));
    }
    Ok(out)
}

fn top_powers<R: Ring, K: OreKind<R>>(l2: &OreOperator<R, K>, lodd: &OreOperator<R, K>) -> Result<(i64, i64)> {
    let k = l2.top_power().ok_or_else(|| Error::invalid("L2 is zero"))?;
    let m = lodd.top_power().ok_or_else(|| Error::invalid("odd operator is zero"))?;
    if k <= 0 || m <= 0 {
        return Err(Error::invalid("operators must have positive order"));
    }
    Ok((k, m))
}

fn powers_of<R: Ring, K: OreKind<R>>(l: &OreOperator<R, K>, top: usize) -> Vec<OreOperator<R, K>> {
    let mut out = vec![OreOperator::one()];
    for _ in 0..top {
        let next = out.last().unwrap() * l;
        out.push(next);
    }
    out
}
