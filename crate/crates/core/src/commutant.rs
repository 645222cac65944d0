//! Operators of prescribed order commuting with a given difference operator.
//!
//! The unknown `X = Σ_{j≤m} p_j T^j` is expanded over a finite monomial
//! basis of the coefficient ring. The commutator `[L, X]` is linear in the
//! unknown scalars, so each basis monomial `b·T^j` contributes one column
//! `[L, b·T^j]`, flattened over the monomials `(power, key)` of the result.
//! The exact nullspace of that system is the commutant within the ansatz.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::linalg::{SparseRow, SparseSystem};
use crate::ore::{commutator, DifferenceOperator, DifferentialOperator, OreKind, OreOperator};
use crate::rings::{DifferenceRing, DifferentialRing, ExpPoly, Field, Poly, RationalFunctionE, Ring, WindowSeq};

/// Coefficient rings that admit a finite linear ansatz.
pub trait AnsatzRing: DifferenceRing {
    type Key: Ord + Clone + Debug;

    /// Monomials spanning the coefficients with degree ≤ `degree` and
    /// `|frequency| ≤ freq`.
    fn ansatz_basis(degree: usize, freq: i64) -> Vec<(Self::Key, Self)>;

    /// Coordinates of `self` in the monomial basis.
    fn components(&self) -> Vec<(Self::Key, Self::Scalar)>;

    fn max_degree(&self) -> usize;

    fn max_frequency(&self) -> i64 {
        0
    }
}

impl<K: Field> AnsatzRing for Poly<K> {
    type Key = usize;

    fn ansatz_basis(degree: usize, _freq: i64) -> Vec<(usize, Self)> {
        (0..=degree).map(|a| (a, Poly::monomial(K::one(), a))).collect()
    }

    fn components(&self) -> Vec<(usize, K)> {
        self.coeffs().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn max_degree(&self) -> usize {
        self.degree().unwrap_or(0)
    }
}

impl AnsatzRing for ExpPoly {
    /// (frequency, degree in n)
    type Key = (i64, usize);

    fn ansatz_basis(degree: usize, freq: i64) -> Vec<((i64, usize), Self)> {
        let mut out = Vec::new();
        for f in -freq..=freq {
            for a in 0..=degree {
                let mono = Poly::monomial(RationalFunctionE::one(), a);
                out.push(((f, a), ExpPoly::from_terms([(f, mono)])));
            }
        }
        out
    }

    fn components(&self) -> Vec<((i64, usize), RationalFunctionE)> {
        self.terms()
            .iter()
            .flat_map(|(f, p)| {
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(a, c)| ((*f, a), c.clone()))
            })
            .collect()
    }

    fn max_degree(&self) -> usize {
        ExpPoly::max_degree(self)
    }

    fn max_frequency(&self) -> i64 {
        self.max_abs_frequency()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    /// Target order `m` of the unknown operator.
    pub order: usize,
    /// Coefficient degree bound `D`; `None` selects the default and enables
    /// escalation.
    pub degree_bound: Option<usize>,
    /// Frequency bound `F` (exponential rings only); `None` selects the default.
    pub frequency_bound: Option<i64>,
    /// Return one representative with leading coefficient 1 instead of a basis.
    pub monic: bool,
}

impl AnsatzSpec {
    pub fn new(order: usize) -> Self {
        AnsatzSpec { order, degree_bound: None, frequency_bound: None, monic: false }
    }

    pub fn degree(mut self, d: usize) -> Self {
        self.degree_bound = Some(d);
        self
    }

    pub fn frequency(mut self, f: i64) -> Self {
        self.frequency_bound = Some(f);
        self
    }

    pub fn monic(mut self) -> Self {
        self.monic = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverLimits {
    /// Largest number of scalar unknowns accepted.
    pub max_unknowns: usize,
    /// Escalation stops once the default degree bound would exceed this.
    pub degree_cap: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits { max_unknowns: 20_000, degree_cap: 256 }
    }
}

/// Basis of the solutions of `[L, X] = 0` inside an ansatz.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutantBasis<R> {
    pub basis: Vec<DifferenceOperator<R>>,
    pub degree_bound: usize,
    pub frequency_bound: i64,
}

impl<R> CommutantBasis<R> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommutantSolution<R> {
    Basis(CommutantBasis<R>),
    Monic(DifferenceOperator<R>),
}

/// Outcome of an exact commutation check.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<R> {
    Zero,
    /// One nonzero term of the commutator (the highest power).
    Nonzero { power: i64, coeff: R },
}

impl<R> Verdict<R> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero)
    }
}

/// Zero iff `[a, b]` is the zero operator (coefficients negligible in
/// floating-point rings).
pub fn verify_commute<R: Ring, K: OreKind<R>>(a: &OreOperator<R, K>, b: &OreOperator<R, K>) -> Verdict<R> {
    verify_commute_tol(a, b, 0.0)
}

pub fn verify_commute_tol<R: Ring, K: OreKind<R>>(
    a: &OreOperator<R, K>,
    b: &OreOperator<R, K>,
    tol: f64,
) -> Verdict<R> {
    let c = commutator(a, b);
    let scale = a.magnitude() * b.magnitude();
    if c.is_negligible(scale, tol) {
        return Verdict::Zero;
    }
    let (power, coeff) = c.top().expect("nonzero commutator");
    Verdict::Nonzero { power, coeff: coeff.clone() }
}

/// Convenience wrappers so callers need not name the operator kind.
pub fn verify_commute_difference<R: DifferenceRing>(
    a: &DifferenceOperator<R>,
    b: &DifferenceOperator<R>,
) -> Verdict<R> {
    verify_commute(a, b)
}

pub fn verify_commute_differential<R: DifferentialRing>(
    a: &DifferentialOperator<R>,
    b: &DifferentialOperator<R>,
) -> Verdict<R> {
    verify_commute(a, b)
}

/// Solve `[L, X] = 0` for `X = Σ_{j=0}^{m} p_j T^j` within the ansatz.
pub fn find_commuting<R: AnsatzRing>(
    l: &DifferenceOperator<R>,
    spec: &AnsatzSpec,
    limits: &SolverLimits,
) -> Result<CommutantSolution<R>> {
    let m = spec.order;
    let max_deg = l.terms().values().map(AnsatzRing::max_degree).max().unwrap_or(0);
    let max_freq = l.terms().values().map(AnsatzRing::max_frequency).max().unwrap_or(0);
    let freq = spec.frequency_bound.unwrap_or(m as i64 * max_freq);
    let mut degree = spec.degree_bound.unwrap_or(2 * m * max_deg);
    loop {
        let system = CommutatorSystem::build(l, m, degree, freq, limits)?;
        if !spec.monic {
            let basis = system.homogeneous_basis();
            return Ok(CommutantSolution::Basis(CommutantBasis {
                basis,
                degree_bound: degree,
                frequency_bound: freq,
            }));
        }
        if let Some(x) = system.monic_solution() {
            return Ok(CommutantSolution::Monic(x));
        }
        let next = (2 * degree).max(1);
        if spec.degree_bound.is_some() || next > limits.degree_cap {
            return Err(Error::NoSolution(format!(
                "order {m}, degree bound {degree}, frequency bound {freq}"
            )));
        }
        degree = next;
    }
}

/// Basis of the commutant within the ansatz (the `monic` flag is ignored).
pub fn find_commuting_basis<R: AnsatzRing>(
    l: &DifferenceOperator<R>,
    spec: &AnsatzSpec,
    limits: &SolverLimits,
) -> Result<CommutantBasis<R>> {
    let spec = AnsatzSpec { monic: false, ..spec.clone() };
    match find_commuting(l, &spec, limits)? {
        CommutantSolution::Basis(b) => Ok(b),
        CommutantSolution::Monic(_) => unreachable!("homogeneous solve requested"),
    }
}

/// Monic representative of order `spec.order` (the `monic` flag is implied).
pub fn find_monic_commuting<R: AnsatzRing>(
    l: &DifferenceOperator<R>,
    spec: &AnsatzSpec,
    limits: &SolverLimits,
) -> Result<DifferenceOperator<R>> {
    let spec = AnsatzSpec { monic: true, ..spec.clone() };
    match find_commuting(l, &spec, limits)? {
        CommutantSolution::Monic(x) => Ok(x),
        CommutantSolution::Basis(_) => unreachable!("monic solve requested"),
    }
}

struct CommutatorSystem<R: AnsatzRing> {
    order: usize,
    /// column index -> (power j, monomial key, monomial)
    columns: Vec<(usize, R::Key, R)>,
    system: SparseSystem<R::Scalar>,
    /// visit highest power first, then largest key
    pivot_order: Vec<usize>,
}

impl<R: AnsatzRing> CommutatorSystem<R> {
    fn build(l: &DifferenceOperator<R>, m: usize, degree: usize, freq: i64, limits: &SolverLimits) -> Result<Self> {
        let mono = R::ansatz_basis(degree, freq);
        let ncols = (m + 1) * mono.len();
        if ncols > limits.max_unknowns {
            return Err(Error::SizeLimit(format!("{ncols} unknowns > {}", limits.max_unknowns)));
        }
        let mut columns = Vec::with_capacity(ncols);
        for j in 0..=m {
            for (k, b) in &mono {
                columns.push((j, k.clone(), b.clone()));
            }
        }
        let mut row_index: BTreeMap<(i64, R::Key), usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, R::Scalar)> = Vec::new();
        for (col, (j, _, b)) in columns.iter().enumerate() {
            let x = DifferenceOperator::monomial(b.clone(), *j as i64);
            let c = commutator(l, &x);
            for (&p, coeff) in c.terms() {
                for (key, s) in coeff.components() {
                    let next = row_index.len();
                    let row = *row_index.entry((p, key)).or_insert(next);
                    entries.push((row, col, s));
                }
            }
        }
        let mut rows: Vec<SparseRow<R::Scalar>> = vec![SparseRow::new(); row_index.len()];
        for (r, c, s) in entries {
            rows[r].insert(c, s);
        }
        // deterministic row order: by (power, key)
        let mut system = SparseSystem::new(ncols);
        for (_, r) in row_index {
            system.push_row(std::mem::take(&mut rows[r]));
        }
        let mut pivot_order: Vec<usize> = (0..ncols).collect();
        pivot_order.sort_by(|&a, &b| {
            let (ja, ka, _) = &columns[a];
            let (jb, kb, _) = &columns[b];
            jb.cmp(ja).then_with(|| kb.cmp(ka))
        });
        Ok(CommutatorSystem { order: m, columns, system, pivot_order })
    }

    fn assemble(&self, v: &[R::Scalar]) -> DifferenceOperator<R> {
        let mut x = DifferenceOperator::zero();
        for (col, s) in v.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let (j, _, b) = &self.columns[col];
            x.add_term(*j as i64, b.scale(s));
        }
        x
    }

    fn homogeneous_basis(&self) -> Vec<DifferenceOperator<R>> {
        // reduced echelon form of the kernel, so members have distinct leading monomials
        let kernel = self.system.nullspace(&self.pivot_order, 1e-12);
        let mut k = SparseSystem::new(self.system.ncols());
        for v in kernel {
            k.push_row(v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect());
        }
        let mut basis: Vec<DifferenceOperator<R>> = k
            .rref(&self.pivot_order, 1e-12)
            .pivot_rows()
            .map(|row| {
                let mut v = vec![R::Scalar::zero(); self.system.ncols()];
                for (c, s) in row {
                    v[*c] = s.clone();
                }
                self.assemble(&v)
            })
            .collect();
        basis.sort_by_key(|op| op.top_power());
        basis
    }

    /// Affine solve with `p_m = 1`; free variables are set to zero, which
    /// fixes the representative given the pivoting order.
    fn monic_solution(&self) -> Option<DifferenceOperator<R>> {
        let ncols = self.system.ncols();
        let mut sys = self.system.clone();
        let mut rhs = vec![R::Scalar::zero(); sys.nrows()];
        let one = R::one();
        let one_comps = one.components();
        for (col, (j, key, _)) in self.columns.iter().enumerate() {
            if *j != self.order {
                continue;
            }
            let target = one_comps
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(R::Scalar::zero);
            let mut row = SparseRow::new();
            row.insert(col, R::Scalar::one());
            sys.push_row(row);
            rhs.push(target);
        }
        debug_assert_eq!(sys.ncols(), ncols);
        let v = sys.solve(&rhs, &self.pivot_order, 1e-12)?;
        Some(self.assemble(&v))
    }
}

/// Sequence-mode solver: coefficients of `X` are per-n unknowns on
/// `[lo, hi]`; equations that reach outside the known data are dropped.
pub fn find_commuting_on_window<K: Field>(
    l: &DifferenceOperator<WindowSeq<K>>,
    order: usize,
    window: (i64, i64),
    monic: bool,
    tol: f64,
) -> Result<CommutantSolution<WindowSeq<K>>> {
    let (lo, hi) = window;
    if hi < lo {
        return Err(Error::invalid("empty window"));
    }
    let len = (hi - lo + 1) as usize;
    let top_unknown = if monic { order } else { order + 1 };
    let ncols = top_unknown * len;
    let col = |j: usize, n: i64| j * len + (n - lo) as usize;
    let known = |n: i64| (lo..=hi).contains(&n);
    let lterms: Vec<(i64, &WindowSeq<K>)> = l.terms().iter().map(|(p, c)| (*p, c)).collect();
    let (pmin, pmax) = match (l.bottom_power(), l.top_power()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::invalid("zero operator")),
    };
    let reach = pmin.abs().max(pmax.abs()) + order as i64;

    let mut system = SparseSystem::new(ncols);
    let mut rhs = Vec::new();
    for k in pmin..=pmax + order as i64 {
        for n in lo - reach..=hi + reach {
            let mut row: SparseRow<K> = SparseRow::new();
            let mut constant = K::zero();
            let mut valid = true;
            let mut touched = false;
            for &(i, li) in &lterms {
                let j = k - i;
                if j < 0 || j > order as i64 {
                    continue;
                }
                let (Some(a), Some(b)) = (li.get(n), li.get(n + j)) else {
                    valid = false;
                    break;
                };
                // L_i(n)·X_j(n+i) − X_j(n)·L_i(n+j)
                if monic && j as usize == order {
                    constant = constant + a.clone() - b.clone();
                    touched = true;
                    continue;
                }
                if !known(n + i) || !known(n) {
                    valid = false;
                    break;
                }
                let ju = j as usize;
                let e1 = row.entry(col(ju, n + i)).or_insert_with(K::zero);
                *e1 = e1.clone() + a.clone();
                let e2 = row.entry(col(ju, n)).or_insert_with(K::zero);
                *e2 = e2.clone() - b.clone();
                touched = true;
            }
            if valid && touched {
                system.push_row(row);
                rhs.push(-constant);
            }
        }
    }
    let order_cols: Vec<usize> = (0..top_unknown).rev().flat_map(|j| (0..len).map(move |t| j * len + t)).collect();
    let assemble = |v: &[K]| {
        let mut x = DifferenceOperator::zero();
        for j in 0..top_unknown {
            let vals = v[j * len..(j + 1) * len].to_vec();
            x.add_term(j as i64, WindowSeq::new(lo, vals));
        }
        if monic {
            x.add_term(order as i64, WindowSeq::Const(K::one()));
        }
        x
    };
    if monic {
        let v = system
            .solve(&rhs, &order_cols, tol)
            .ok_or_else(|| Error::NoSolution(format!("monic order {order} on window [{lo}, {hi}]")))?;
        Ok(CommutantSolution::Monic(assemble(&v)))
    } else {
        let basis = system.nullspace(&order_cols, tol).iter().map(|v| assemble(v)).collect();
        Ok(CommutantSolution::Basis(CommutantBasis { basis, degree_bound: 0, frequency_bound: 0 }))
    }
}
