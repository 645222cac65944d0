//! Sparse Gauss–Jordan elimination over an arbitrary [`Field`].
//!
//! The commutator systems built by the commutant solver are very sparse and
//! close to block triangular once columns are ordered by (power, degree), so
//! the elimination works row-wise on sorted maps and lets the caller fix the
//! column pivoting order. Pivot rows are chosen deterministically: in exact
//! fields the candidate row with the fewest nonzeros wins (ties by row
//! index); in floating-point fields the largest magnitude wins.

use std::collections::BTreeMap;

use crate::rings::Field;

pub type SparseRow<K> = BTreeMap<usize, K>;

#[derive(Clone, Debug)]
pub struct SparseSystem<K> {
    ncols: usize,
    rows: Vec<SparseRow<K>>,
}

/// Reduced row echelon form: each pivot row has a 1 in its pivot column and
/// no other pivot column entries.
#[derive(Clone, Debug)]
pub struct Rref<K> {
    ncols: usize,
    pivots: Vec<(usize, SparseRow<K>)>,
    /// Rows that reduced to a constant-only equation (inconsistent when the
    /// system is augmented).
    inconsistent: bool,
}

impl<K: Field> SparseSystem<K> {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: SparseRow<K>) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    /// Row-reduce, visiting columns in `order` (columns missing from `order`
    /// are visited afterwards in index order). `tol` is only used by inexact
    /// fields.
    pub fn rref(&self, order: &[usize], tol: f64) -> Rref<K> {
        reduce(self.ncols, self.rows.clone(), order, None, tol)
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self, order: &[usize], tol: f64) -> Vec<Vec<K>> {
        self.rref(order, tol).nullspace()
    }

    /// One solution of `A v = rhs` (free variables set to zero), or `None`
    /// when inconsistent.
    pub fn solve(&self, rhs: &[K], order: &[usize], tol: f64) -> Option<Vec<K>> {
        assert_eq!(rhs.len(), self.rows.len(), "right-hand side length");
        let aug = self.ncols;
        let full: Vec<SparseRow<K>> = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(row, r)| {
                let mut row = row.clone();
                if !r.is_zero() {
                    row.insert(aug, r.clone());
                }
                row
            })
            .collect();
        let rref = reduce(self.ncols + 1, full, order, Some(aug), tol);
        if rref.inconsistent {
            return None;
        }
        let mut x = vec![K::zero(); self.ncols];
        for (c, row) in &rref.pivots {
            if let Some(v) = row.get(&aug) {
                x[*c] = v.clone();
            }
        }
        Some(x)
    }
}

impl<K: Field> Rref<K> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = &SparseRow<K>> {
        self.pivots.iter().map(|(_, r)| r)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let piv: std::collections::BTreeSet<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        (0..self.ncols).filter(|c| !piv.contains(c)).collect()
    }

    pub fn nullspace(&self) -> Vec<Vec<K>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![K::zero(); self.ncols];
                v[f] = K::one();
                for (c, row) in &self.pivots {
                    if let Some(a) = row.get(&f) {
                        v[*c] = -a.clone();
                    }
                }
                v
            })
            .collect()
    }
}

fn reduce<K: Field>(
    ncols: usize,
    mut rows: Vec<SparseRow<K>>,
    order: &[usize],
    augmented: Option<usize>,
    tol: f64,
) -> Rref<K> {
    let scale = rows
        .iter()
        .flat_map(|r| r.values().map(Field::magnitude))
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let drop = tol * scale;
    let mut seen = vec![false; ncols];
    let mut col_seq: Vec<usize> = Vec::with_capacity(ncols);
    for &c in order {
        if c < ncols && Some(c) != augmented && !seen[c] {
            seen[c] = true;
            col_seq.push(c);
        }
    }
    for c in 0..ncols {
        if !seen[c] && Some(c) != augmented {
            col_seq.push(c);
        }
    }

    let mut pivoted = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for &c in &col_seq {
        let mut best: Option<usize> = None;
        for (i, r) in rows.iter().enumerate() {
            if pivoted[i] {
                continue;
            }
            let Some(v) = r.get(&c) else { continue };
            if !K::EXACT && v.magnitude() <= drop {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let better = if K::EXACT {
                        r.len() < rows[b].len()
                    } else {
                        v.magnitude() > rows[b][&c].magnitude()
                    };
                    Some(if better { i } else { b })
                }
            };
        }
        let Some(p) = best else { continue };
        pivoted[p] = true;
        let inv = rows[p][&c].inv().expect("pivot is nonzero");
        let prow: SparseRow<K> = rows[p]
            .iter()
            .map(|(&k, v)| (k, if k == c { K::one() } else { v.clone() * inv.clone() }))
            .collect();
        rows[p] = prow.clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            let Some(f) = r.remove(&c) else { continue };
            for (&k, v) in &prow {
                if k == c {
                    continue;
                }
                let nv = r.get(&k).cloned().unwrap_or_else(K::zero) - f.clone() * v.clone();
                if nv.is_zero() || (!K::EXACT && nv.magnitude() <= drop) {
                    r.remove(&k);
                } else {
                    r.insert(k, nv);
                }
            }
        }
        pivots.push((c, p));
    }

    let inconsistent = augmented.is_some_and(|a| {
        rows.iter().enumerate().any(|(i, r)| {
            !pivoted[i] && r.get(&a).is_some_and(|v| K::EXACT || v.magnitude() > drop)
        })
    });
    let pivots = pivots.into_iter().map(|(c, p)| (c, std::mem::take(&mut rows[p]))).collect();
    Rref { ncols, pivots, inconsistent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Rational;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn system(rows: &[&[i64]]) -> SparseSystem<Rational> {
        let mut s = SparseSystem::new(rows[0].len());
        for row in rows {
            s.push_row(row.iter().enumerate().map(|(k, &v)| (k, r(v))).collect());
        }
        s
    }

    fn apply(rows: &[&[i64]], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|row| row.iter().zip(v).fold(r(0), |acc, (&a, b)| acc + r(a) * b.clone()))
            .collect()
    }

    #[test]
    fn nullspace_of_rank_two() {
        let rows: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]];
        let s = system(rows);
        let ns = s.nullspace(&[], 0.0);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(rows, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        let s = system(rows);
        let x = s.solve(&[r(3), r(1)], &[], 0.0).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
        let s2 = system(&[&[1, 1], &[2, 2]]);
        assert!(s2.solve(&[r(1), r(3)], &[], 0.0).is_none());
    }

    #[test]
    fn zero_matrix_is_all_free() {
        let s: SparseSystem<Rational> = SparseSystem::new(3);
        assert_eq!(s.nullspace(&[], 0.0).len(), 3);
    }

    #[test]
    fn floating_point_nullspace() {
        let mut s: SparseSystem<f64> = SparseSystem::new(3);
        s.push_row([(0, 1.0), (1, 2.0), (2, 3.0)].into_iter().collect());
        s.push_row([(0, 2.0), (1, 4.0000000000000001), (2, 6.0)].into_iter().collect());
        let ns = s.nullspace(&[], 1e-12);
        assert_eq!(ns.len(), 2);
    }
}
