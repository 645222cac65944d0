use crate::error::{Error, Result};
use crate::linalg::{SparseRow, SparseSystem};
use crate::ore::{DifferenceOperator, Sequence};
use crate::rings::{Embed, Field, Poly, WindowSeq};

use super::{CurveData, CurvePoint};

/// Relative tolerance for chain identities in floating-point fields.
pub const CHAIN_TOL: f64 = 1e-9;

/// Per-n data of the dressing chain on the window `[lo, hi]`.
///
/// `u`, `w`, `s` are indexed by `n ∈ [lo, hi−1]`; `q` and the optional
/// `gamma` by `n ∈ [lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DressingChain<K> {
    pub genus: usize,
    pub window: (i64, i64),
    pub gamma: Option<Vec<K>>,
    pub u: Vec<K>,
    pub w: Vec<K>,
    pub s: Vec<Poly<K>>,
    pub q: Vec<Poly<K>>,
}

/// Outcome of a polynomial or scalar identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub holds: bool,
    /// Largest absolute residual coefficient.
    pub residual: f64,
    /// Magnitude of the terms being compared; `holds` means `residual` is
    /// negligible against it.
    pub scale: f64,
}

impl Check {
    fn from_poly<K: Field>(r: &Poly<K>, scale: f64) -> Self {
        let residual = r.coeffs().iter().map(Field::magnitude).fold(0.0, f64::max);
        let holds = r.coeffs().iter().all(|c| c.is_negligible(scale, CHAIN_TOL));
        Check { holds, residual, scale }
    }

    /// `residual ≤ tol · scale`, for caller-chosen tolerances in numeric mode.
    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol * self.scale
    }

    fn from_scalars<V: Field>(rs: &[V], scale: f64) -> Self {
        let residual = rs.iter().map(Field::magnitude).fold(0.0, f64::max);
        let holds = rs.iter().all(|c| c.is_negligible(scale, CHAIN_TOL));
        Check { holds, residual, scale }
    }
}

fn poly_scale<K: Field>(ps: &[&Poly<K>]) -> f64 {
    ps.iter()
        .flat_map(|p| p.coeffs().iter().map(Field::magnitude))
        .fold(1.0, f64::max)
}

fn near<K: Field>(a: &K, b: &K) -> bool {
    (a.clone() - b.clone()).is_negligible(a.magnitude().max(b.magnitude()), CHAIN_TOL)
}

/// Genus-one chain from `γ_n` and caller-supplied `√F(γ_n)` on
/// `[start, start + len − 1]`.
///
/// `δ₀(n) = U_nγ_n + ε_n√F(γ_n)` with signs chosen so that
/// `S_n + S_{n+1} = −(U_n+U_{n+1})·Q_{n+1}`. Both starting signs are
/// propagated; if two different consistent chains result the choice is
/// ambiguous and reported as an error.
pub fn chain_from_gamma_g1<K: Field>(
    curve: &CurveData<K>,
    start: i64,
    gamma: &[K],
    sqrt_f: &[K],
) -> Result<DressingChain<K>> {
    if curve.genus != 1 {
        return Err(Error::invalid("genus-one constructor needs a genus-one curve"));
    }
    if gamma.len() != sqrt_f.len() {
        return Err(Error::invalid("gamma and sqrtF lengths differ"));
    }
    if gamma.len() < 2 {
        return Err(Error::invalid("window needs at least two gamma values"));
    }
    let f = curve.polynomial();
    for (k, (g, r)) in gamma.iter().zip(sqrt_f).enumerate() {
        let fv = f.eval(g);
        if !near(&(r.clone() * r.clone()), &fv) {
            return Err(Error::invalid(format!("sqrtF² ≠ F(γ) at n = {}", start + k as i64)));
        }
    }
    for k in 0..gamma.len() - 1 {
        if near(&gamma[k], &gamma[k + 1]) {
            return Err(Error::GammaCollision(start + k as i64));
        }
    }
    let len = gamma.len() - 1;
    let u: Vec<K> = (0..len)
        .map(|k| (-(sqrt_f[k].clone() + sqrt_f[k + 1].clone())).div(&(gamma[k].clone() - gamma[k + 1].clone())))
        .collect();
    let c2 = curve.coeffs[2].clone();
    let w: Vec<K> = (0..len).map(|k| -c2.clone() - gamma[k].clone() - gamma[k + 1].clone()).collect();
    for k in 0..len.saturating_sub(1) {
        if (u[k].clone() + u[k + 1].clone()).is_negligible(u[k].magnitude().max(u[k + 1].magnitude()), CHAIN_TOL) {
            return Err(Error::DegenerateChain(start + k as i64 + 1));
        }
    }

    // ε_n s_n + ε_{n+1} s_{n+1} = s_n + s_{n+1}, imposed up to the last γ
    let propagate = |first: i64| -> Option<Vec<i64>> {
        let mut eps = vec![first];
        for k in 0..len {
            let e = *eps.last().unwrap();
            let rhs = sqrt_f[k].clone() + sqrt_f[k + 1].clone() - K::from_i64(e) * sqrt_f[k].clone();
            let s1 = &sqrt_f[k + 1];
            let next = if s1.is_negligible(rhs.magnitude(), CHAIN_TOL) {
                if !rhs.is_negligible(sqrt_f[k].magnitude(), CHAIN_TOL) {
                    return None;
                }
                1
            } else if near(&rhs, s1) {
                1
            } else if near(&rhs, &-s1.clone()) {
                -1
            } else {
                return None;
            };
            eps.push(next);
        }
        Some(eps)
    };
    let delta = |eps: &[i64]| -> Vec<K> {
        (0..len).map(|k| u[k].clone() * gamma[k].clone() + K::from_i64(eps[k]) * sqrt_f[k].clone()).collect()
    };
    let candidates: Vec<Vec<K>> = [1, -1].into_iter().filter_map(propagate).map(|e| delta(&e)).collect();
    let d0 = match candidates.as_slice() {
        [] => return Err(Error::SignResolution("no consistent sign assignment".into())),
        [d] => d.clone(),
        [a, b] => {
            if a.iter().zip(b).all(|(x, y)| near(x, y)) {
                a.clone()
            } else {
                return Err(Error::SignResolution(format!(
                    "both signs are consistent starting at n = {start}"
                )));
            }
        }
        _ => unreachable!(),
    };
    let s: Vec<Poly<K>> = (0..len).map(|k| Poly::new(vec![d0[k].clone(), -u[k].clone()])).collect();
    let q: Vec<Poly<K>> = gamma.iter().map(|g| Poly::new(vec![-g.clone(), K::one()])).collect();
    let hi = start + len as i64;
    DressingChain::from_parts(1, (start, hi), Some(gamma.to_vec()), u, w, s, q)
}

impl<K: Field> DressingChain<K> {
    /// Validate caller-supplied chain data.
    pub fn from_parts(
        genus: usize,
        window: (i64, i64),
        gamma: Option<Vec<K>>,
        u: Vec<K>,
        w: Vec<K>,
        s: Vec<Poly<K>>,
        q: Vec<Poly<K>>,
    ) -> Result<Self> {
        let (lo, hi) = window;
        if hi <= lo {
            return Err(Error::invalid("chain window needs at least two indices"));
        }
        let len = (hi - lo) as usize;
        if u.len() != len || w.len() != len || s.len() != len || q.len() != len + 1 {
            return Err(Error::invalid("chain data lengths do not match the window"));
        }
        if gamma.as_ref().is_some_and(|g| g.len() != len + 1) {
            return Err(Error::invalid("gamma length does not match the window"));
        }
        for k in 0..len {
            if s[k].degree() != Some(genus) || !near(s[k].leading().unwrap(), &-u[k].clone()) {
                return Err(Error::invalid(format!(
                    "S_n must have degree {genus} and leading coefficient −U_n at n = {}",
                    lo + k as i64
                )));
            }
        }
        for k in 1..len {
            let sum = u[k - 1].clone() + u[k].clone();
            if sum.is_negligible(u[k].magnitude().max(u[k - 1].magnitude()), CHAIN_TOL) {
                return Err(Error::DegenerateChain(lo + k as i64));
            }
            // Q_n (U_{n−1}+U_n) + S_{n−1} + S_n = 0
            let r = &(&q[k].scale(&sum) + &s[k - 1]) + &s[k];
            if !Check::from_poly(&r, poly_scale(&[&q[k], &s[k - 1], &s[k]])).holds {
                return Err(Error::invalid(format!("Q_n does not match the S ratio at n = {}", lo + k as i64)));
            }
        }
        Ok(DressingChain { genus, window, gamma, u, w, s, q })
    }

    fn idx(&self, n: i64, last: i64) -> Result<usize> {
        let (lo, _) = self.window;
        if n < lo || n > last {
            return Err(Error::WindowUnderflow { index: n, lo, hi: last });
        }
        Ok((n - lo) as usize)
    }

    /// Index into `u`, `w`, `s` (defined on `[lo, hi−1]`).
    fn at(&self, n: i64) -> Result<usize> {
        self.idx(n, self.window.1 - 1)
    }

    /// Index into `q` and `gamma` (defined on `[lo, hi]`).
    fn at_q(&self, n: i64) -> Result<usize> {
        self.idx(n, self.window.1)
    }

    pub fn u_at(&self, n: i64) -> Result<&K> {
        Ok(&self.u[self.at(n)?])
    }

    pub fn w_at(&self, n: i64) -> Result<&K> {
        Ok(&self.w[self.at(n)?])
    }

    pub fn s_at(&self, n: i64) -> Result<&Poly<K>> {
        Ok(&self.s[self.at(n)?])
    }

    pub fn q_at(&self, n: i64) -> Result<&Poly<K>> {
        Ok(&self.q[self.at_q(n)?])
    }

    /// `z − U_n² − W_n`
    fn tail(&self, n: i64) -> Result<Poly<K>> {
        let u = self.u_at(n)?;
        let c = -(u.clone() * u.clone()) - self.w_at(n)?.clone();
        Ok(Poly::new(vec![c, K::one()]))
    }

    /// `F − S_n² − Q_nQ_{n+1}(z − U_n² − W_n)` vanishes.
    pub fn verify_eq2(&self, curve: &CurveData<K>, n: i64) -> Result<Check> {
        let s = self.s_at(n)?;
        let qq = self.q_at(n)? * self.q_at(n + 1)?;
        let last = &qq * &self.tail(n)?;
        let f = curve.polynomial();
        let r = &(&f - &(s * s)) - &last;
        Ok(Check::from_poly(&r, poly_scale(&[&f, &(s * s), &last])))
    }

    /// `(S_n−S_{n+1})(U_n+U_{n+1}) − Q_n(z−U_n²−W_n) + Q_{n+2}(z−U_{n+1}²−W_{n+1})` vanishes.
    pub fn verify_corollary(&self, n: i64) -> Result<Check> {
        let (s0, s1) = (self.s_at(n)?, self.s_at(n + 1)?);
        let sum = self.u_at(n)?.clone() + self.u_at(n + 1)?.clone();
        let a = (s0 - s1).scale(&sum);
        let b = self.q_at(n)? * &self.tail(n)?;
        let c = self.q_at(n + 2)? * &self.tail(n + 1)?;
        let r = &(&a - &b) + &c;
        Ok(Check::from_poly(&r, poly_scale(&[&a, &b, &c])))
    }

    /// `χ(n, P) = (S_n(z) + w) / Q_n(z)`.
    pub fn chi<V: Field>(&self, n: i64, p: &CurvePoint<V>) -> Result<V>
    where
        K: Embed<V>,
    {
        let s = self.s_at(n)?.eval_in(&p.z);
        let q = self.q_at(n)?.eval_in(&p.z);
        if q.is_negligible(p.z.magnitude(), 1e-12) {
            return Err(Error::ChiPole(n));
        }
        Ok((s + p.w.clone()).div(&q))
    }

    /// Normal-ordered `(T + U_n+U_{n+1} + χ_{n+1})(T − χ_n) = L₂ − z`, with
    /// the left factor's χ supplied as `left_chi`.
    pub fn check_factorization<V: Field>(&self, n: i64, z: &V, chi_n: &V, chi_next: &V, left_chi: &V) -> Result<Check>
    where
        K: Embed<V>,
    {
        let sum: V = self.u_at(n)?.embed() + self.u_at(n + 1)?.embed();
        let un: V = self.u_at(n)?.embed();
        let a = sum.clone() + left_chi.clone();
        // T-coefficient: a − χ_{n+1} against U_n + U_{n+1}
        let r1 = a.clone() - chi_next.clone() - sum.clone();
        // constant: −a·χ_n against U_n² + W_n − z
        let rhs = un.clone() * un + self.w_at(n)?.embed() - z.clone();
        let r2 = -(a.clone() * chi_n.clone()) - rhs.clone();
        let scale = [a.magnitude(), sum.magnitude(), rhs.magnitude(), (a * chi_n.clone()).magnitude()]
            .into_iter()
            .fold(1.0, f64::max);
        Ok(Check::from_scalars(&[r1, r2], scale))
    }

    /// Factorization of `L₂ − z` at the point `P` (left χ at index n+1).
    pub fn verify_factorization<V: Field>(&self, n: i64, p: &CurvePoint<V>) -> Result<Check>
    where
        K: Embed<V>,
    {
        let chi_n = self.chi(n, p)?;
        let chi_next = self.chi(n + 1, p)?;
        self.check_factorization(n, &p.z, &chi_n, &chi_next, &chi_next)
    }

    /// `ψ(n, P)` normalized by `ψ(0, P) = 1`.
    pub fn ba_eval<V: Field>(&self, n: i64, p: &CurvePoint<V>) -> Result<V>
    where
        K: Embed<V>,
    {
        let mut acc = V::one();
        if n >= 0 {
            for j in 0..n {
                acc = acc * self.chi(j, p)?;
            }
        } else {
            for j in n..0 {
                let c = self.chi(j, p)?;
                let inv = c.inv().ok_or(Error::ChiPole(j))?;
                acc = acc * inv;
            }
        }
        Ok(acc)
    }

    /// `ψ(·, P)` on every index where it is defined.
    pub fn ba_sequence<V: Field>(&self, p: &CurvePoint<V>) -> Result<Sequence<V>>
    where
        K: Embed<V>,
    {
        let (lo, hi) = self.window;
        if lo > 0 || hi < 0 {
            return Err(Error::invalid("window must contain 0 to normalize ψ"));
        }
        let mut values = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            values.push(self.ba_eval(n, p)?);
        }
        Ok(Sequence::new(lo, values))
    }

    /// `L₂ = (T + U_n)² + W_n = T² + (U_n+U_{n+1})T + U_n² + W_n`.
    pub fn l2_operator(&self) -> DifferenceOperator<WindowSeq<K>> {
        let (lo, _) = self.window;
        let u = WindowSeq::new(lo, self.u.clone());
        let w = WindowSeq::new(lo, self.w.clone());
        let t = DifferenceOperator::generator();
        let base = &t + &DifferenceOperator::from_coeff(u);
        &(&base * &base) + &DifferenceOperator::from_coeff(w)
    }

    /// The monic operator of order `2g+1` with `Lψ = wψ`, solved per n from
    /// `Σ_j a_j(n) χ_n⋯χ_{n+j−1} = w` as an identity in `K[z] ⊕ K[z]·w`
    /// modulo `w² = F(z)`.
    pub fn odd_operator(&self, curve: &CurveData<K>) -> Result<DifferenceOperator<WindowSeq<K>>> {
        let order = 2 * self.genus + 1;
        let (lo, hi) = self.window;
        let last = hi - order as i64;
        if last < lo {
            return Err(Error::WindowUnderflow { index: lo + order as i64, lo, hi });
        }
        let f = curve.polynomial();
        let mut coeffs: Vec<Vec<K>> = vec![Vec::new(); order];
        for n in lo..=last {
            // numerators Π_{i<j}(S_{n+i} + w)·Π_{j≤i<N} Q_{n+i}
            let mut cols: Vec<Hyper<K>> = Vec::with_capacity(order + 1);
            for j in 0..=order {
                let mut h = Hyper::scalar(Poly::constant(K::one()));
                for i in 0..order {
                    let factor = if i < j {
                        Hyper { a: self.s_at(n + i as i64)?.clone(), b: Poly::constant(K::one()) }
                    } else {
                        Hyper::scalar(self.q_at(n + i as i64)?.clone())
                    };
                    h = h.mul(&factor, &f);
                }
                cols.push(h);
            }
            let mut target = Hyper::scalar(Poly::constant(K::one()));
            for i in 0..order {
                target = target.mul(&Hyper::scalar(self.q_at(n + i as i64)?.clone()), &f);
            }
            let target = target.mul(&Hyper { a: Poly::new(Vec::new()), b: Poly::constant(K::one()) }, &f);
            // unknowns a_0..a_{N−1}; rhs = target − cols[N]
            let rhs_h = target.sub(&cols[order]);
            let width = cols.iter().map(Hyper::width).max().unwrap_or(0).max(rhs_h.width());
            let mut sys = SparseSystem::new(order);
            let mut rhs = Vec::new();
            for part in 0..2 {
                for d in 0..width {
                    let mut row = SparseRow::new();
                    for (j, c) in cols.iter().take(order).enumerate() {
                        let v = c.part(part).coeff(d);
                        if !v.is_zero() {
                            row.insert(j, v);
                        }
                    }
                    sys.push_row(row);
                    rhs.push(rhs_h.part(part).coeff(d));
                }
            }
            let sol = sys
                .solve(&rhs, &[], 1e-12)
                .ok_or_else(|| Error::Residual(format!("no odd-order eigenoperator at n = {n}")))?;
            for (j, v) in sol.into_iter().enumerate() {
                coeffs[j].push(v);
            }
        }
        let mut op = DifferenceOperator::monomial(WindowSeq::Const(K::one()), order as i64);
        for (j, vals) in coeffs.into_iter().enumerate() {
            op.add_term(j as i64, WindowSeq::new(lo, vals));
        }
        Ok(op)
    }
}

/// `a(z) + b(z)·w` with `w² = F(z)`.
#[derive(Clone, Debug)]
struct Hyper<K> {
    a: Poly<K>,
    b: Poly<K>,
}

impl<K: Field> Hyper<K> {
    fn scalar(a: Poly<K>) -> Self {
        Hyper { a, b: Poly::new(Vec::new()) }
    }

    fn mul(&self, o: &Self, f: &Poly<K>) -> Self {
        Hyper {
            a: &(&self.a * &o.a) + &(&(&self.b * &o.b) * f),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Hyper { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn part(&self, k: usize) -> &Poly<K> {
        if k == 0 {
            &self.a
        } else {
            &self.b
        }
    }

    fn width(&self) -> usize {
        self.a.coeffs().len().max(self.b.coeffs().len())
    }
}
