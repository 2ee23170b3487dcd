//! Exact sparse linear algebra over the rationals, keyed by an arbitrary
//! ordered coordinate type. Pivots are leading (maximal) coordinates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rat::Rat;

pub type Row<K> = BTreeMap<K, Rat>;

/// `target -= c·source`.
pub fn row_axpy<K: Ord + Clone>(target: &mut Row<K>, c: &Rat, source: &Row<K>) {
    for (k, v) in source.iter() {
        let entry = target.entry(k.clone()).or_insert_with(Rat::zero);
        *entry -= &(c * v);
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Row-reduced spanning set: one row per pivot, rows normalized so the pivot
/// coefficient is 1, and every pivot eliminated from all other rows.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row<K>> {
        self.rows.values()
    }

    /// Normal form of `v` modulo the span: cancels every coordinate that has
    /// a pivot, working from the largest down. The result is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: Row<K>) -> Row<K> {
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                None => return v,
                Some((k, c)) => {
                    row_axpy(&mut v, &c, &self.rows[&k]);
                    debug_assert!(!v.contains_key(&k));
                }
            }
        }
    }

    pub fn contains(&self, v: Row<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`, returning the new pivot (and the normalized inserted row)
    /// when `v` enlarges the span.
    pub fn insert(&mut self, v: Row<K>) -> Option<(K, Row<K>)> {
        let mut v = self.reduce(v);
        let pivot = v.keys().next_back()?.clone();
        let lc = v[&pivot].clone();
        if !num_traits::One::is_one(&lc) {
            let inv = lc.recip();
            for c in v.values_mut() {
                *c *= &inv;
            }
        }
        // Back-substitution keeps the form canonical and coefficients tame.
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                row_axpy(row, &c, &v);
            }
        }
        self.rows.insert(pivot.clone(), v.clone());
        Some((pivot, v))
    }

    /// Total number of stored coefficients.
    pub fn cells(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }
}

/// Basis of the intersection of `span(rows)` with the coordinate subspace
/// `{v : v_k = 0 for all k with !allowed(k)}`.
///
/// Maintains a tracked echelon on the disallowed coordinates: a row whose
/// disallowed part reduces to zero contributes its tracked full combination.
pub fn intersect_coordinate_subspace<K, F>(rows: Vec<Row<K>>, allowed: F) -> Vec<Row<K>>
where
    K: Ord + Clone,
    F: Fn(&K) -> bool,
{
    let mut tracker: BTreeMap<K, (Row<K>, Row<K>)> = BTreeMap::new();
    let mut result: SparseEchelon<K> = SparseEchelon::new();
    for full in rows {
        let mut dis: Row<K> = full
            .iter()
            .filter(|(k, _)| !allowed(k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut combo = full;
        loop {
            let hit = dis
                .iter()
                .rev()
                .find(|(k, _)| tracker.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                None => break,
                Some((k, c)) => {
                    let (tdis, tfull) = tracker[&k].clone();
                    row_axpy(&mut dis, &c, &tdis);
                    row_axpy(&mut combo, &c, &tfull);
                }
            }
        }
        match dis.keys().next_back().cloned() {
            None => {
                result.insert(combo);
            }
            Some(pivot) => {
                let lc = dis[&pivot].recip();
                for c in dis.values_mut() {
                    *c *= &lc;
                }
                for c in combo.values_mut() {
                    *c *= &lc;
                }
                tracker.insert(pivot, (dis, combo));
            }
        }
    }
    result.rows.into_values().collect()
}

/// Any exact solution of `A x = b` (free variables set to zero), or `None`
/// when the system is inconsistent. `a` is row-major, rows of equal length.
#[allow(clippy::needless_range_loop)]
pub fn solve_dense(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);
    let mut mat: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs: Vec<Rat> = b.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        rhs.swap(row, p);
        let inv = mat[row][col].recip();
        for c in mat[row].iter_mut() {
            *c *= &inv;
        }
        rhs[row] *= &inv;
        for r in 0..m {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in 0..n {
                    let upd = &mat[r][c] - &(&factor * &mat[row][c]);
                    mat[r][c] = upd;
                }
                let upd = &rhs[r] - &(&factor * &rhs[row]);
                rhs[r] = upd;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero right-hand side.
    for r in row..m {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut x = alloc::vec![Rat::zero(); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = rhs[r].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn row(entries: &[(i64, i64)]) -> Row<i64> {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = SparseEchelon::new();
        e.insert(row(&[(3, 2), (1, 2)]));
        e.insert(row(&[(2, 1)]));
        assert_eq!(e.dim(), 2);
        assert!(e.contains(row(&[(3, 1), (1, 1)])));
        assert!(e.contains(row(&[(3, 5), (2, -7), (1, 5)])));
        assert!(!e.contains(row(&[(1, 1)])));
    }

    #[test]
    fn intersection_with_coordinate_subspace() {
        // span{(a=1,b=1), (a=1,b=-1)} intersected with {b = 0} is all of {b=0}
        // restricted to the span: the combination (2a).
        let rows = alloc::vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1)])];
        let inter = intersect_coordinate_subspace(rows, |k| *k == 0);
        assert_eq!(inter.len(), 1);
        assert!(inter[0].contains_key(&0) && !inter[0].contains_key(&1));

        // span{(a=1,b=1)} meets {b=0} trivially.
        let rows = alloc::vec![row(&[(0, 1), (1, 1)])];
        assert!(intersect_coordinate_subspace(rows, |k| *k == 0).is_empty());
    }

    #[test]
    fn dense_solver() {
        // x + y = 3, x - y = 1
        let a = alloc::vec![
            alloc::vec![int(1), int(1)],
            alloc::vec![int(1), int(-1)],
        ];
        let x = solve_dense(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(x, alloc::vec![int(2), int(1)]);
        // inconsistent
        let a = alloc::vec![alloc::vec![int(1)], alloc::vec![int(1)]];
        assert!(solve_dense(&a, &[int(0), int(1)]).is_none());
        // underdetermined: free variable pinned to zero
        let a = alloc::vec![alloc::vec![int(1), int(1)]];
        let x = solve_dense(&a, &[int(5)]).unwrap();
        assert_eq!(x, alloc::vec![int(5), int(0)]);
    }
}
