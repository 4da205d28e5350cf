//! Sparse matrices over exact rationals, with rank via sparsity-aware
//! Gaussian elimination.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

/// A sparse matrix over `Q`. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Stores `value` at `(row, col)`, removing the entry if it is zero.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Adds `value` into `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            return;
        }
        let slot = self
            .entries
            .entry((row, col))
            .or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Rational> {
        self.entries.get(&(row, col))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product `self * rhs` (for composing differential blocks).
    pub fn multiply(&self, rhs: &SparseRationalMatrix) -> SparseRationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = SparseRationalMatrix::new(self.rows, rhs.cols);
        // Group rhs by row once.
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (r, c, v) in rhs.entries() {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        for (r, mid, a) in self.entries() {
            if let Some(row) = rhs_rows.get(&mid) {
                for &(c, b) in row {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }

    /// Exact rank over `Q`.
    ///
    /// Row-based elimination; in each remaining column the pivot row is the
    /// one with the fewest nonzero entries, which keeps fill-in low on the
    /// very sparse differential blocks this crate produces. Ties break by
    /// row index, so the result path is deterministic (the rank itself is
    /// independent of pivoting).
    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].insert(c, v.clone());
        }
        let mut rank = 0;
        let mut used = vec![false; self.rows];
        for col in 0..self.cols {
            let pivot = rows
                .iter()
                .enumerate()
                .filter(|(r, row)| !used[*r] && row.contains_key(&col))
                .min_by_key(|(r, row)| (row.len(), *r))
                .map(|(r, _)| r);
            let Some(p) = pivot else { continue };
            used[p] = true;
            rank += 1;
            let pivot_row = std::mem::take(&mut rows[p]);
            let pivot_val = pivot_row[&col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if used[r] || !row.contains_key(&col) {
                    continue;
                }
                let factor = &row[&col] / &pivot_val;
                for (&c, v) in &pivot_row {
                    let delta = v * &factor;
                    match row.get_mut(&c) {
                        Some(slot) => {
                            *slot -= delta;
                            if slot.is_zero() {
                                row.remove(&c);
                            }
                        }
                        None => {
                            row.insert(c, -delta);
                        }
                    }
                }
                debug_assert!(!row.contains_key(&col));
            }
        }
        rank
    }
}
