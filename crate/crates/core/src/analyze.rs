//! Empirical scans over the point count `k`: monotonicity of Betti numbers,
//! stabilization detection, and the splitting identity
//! `b_i(C_k) = b_i(C_{k-1}) + dim H_i(quotient)`.
//!
//! Whenever `H_c^0(M;Q^w) = 0` (`M` non-compact or non-orientable) the
//! chain complex splits off a copy of the complex for `k-1` point(s), with
//! the `v0`-free sub-complex as the other summand; degreewise monotonicity
//! in `k` follows. Closed orientable manifolds escape the hypothesis and
//! can genuinely drop Betti numbers as `k` grows (the 2-sphere does, in its
//! top degree, from `k = 1` to `k = 2`), so scans on those report findings
//! rather than failures.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cecomplex::quotient_complex;
use crate::error::Result;
use crate::homology::{betti, betti_odd, homology_of, sym_power_counts, BettiTable};
use crate::manifold::ManifoldModel;

/// A degreewise drop `b_i(C_{k+1}) < b_i(C_k)` found by a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    /// The drop happens from this `k` to `k + 1`.
    pub k: usize,
    pub value: usize,
    pub next: usize,
}

/// Outcome of stabilization detection in one degree. `Resolved` means the
/// value is constant from `at_k` through the end of the scanned range;
/// this is empirical detection over a finite range, not a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilization {
    Resolved { at_k: usize, value: usize },
    Unresolved,
}

/// Betti tables for `k = 0..=k_max` with every monotonicity finding and
/// per-degree stabilization summary.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub manifold: String,
    pub k_max: usize,
    pub tables: Vec<BettiTable>,
    pub violations: Vec<Violation>,
    pub stabilization: BTreeMap<usize, Stabilization>,
}

fn tables_up_to(m: &ManifoldModel, k_max: usize) -> Result<Vec<BettiTable>> {
    (0..=k_max).into_par_iter().map(|k| betti(m, k)).collect()
}

fn stabilization_of(values: &[usize]) -> Stabilization {
    let last = *values.last().expect("scan range is never empty");
    if values.len() >= 2 && values[values.len() - 2] != last {
        return Stabilization::Unresolved;
    }
    let at_k = values
        .iter()
        .rposition(|&v| v != last)
        .map_or(0, |pos| pos + 1);
    Stabilization::Resolved { at_k, value: last }
}

/// Computes Betti tables for `k = 0..=k_max` and reports every degreewise
/// decrease. For manifolds with `H_c^0(M;Q^w) = 0` the expected report is
/// an empty violation list.
pub fn monotonicity_scan(m: &ManifoldModel, k_max: usize) -> Result<ScanReport> {
    let tables = tables_up_to(m, k_max)?;
    let max_degree = tables.iter().map(|t| t.values().len()).max().unwrap_or(0);

    let mut violations = Vec::new();
    for k in 0..k_max {
        for degree in 0..max_degree {
            let value = tables[k].value(degree);
            let next = tables[k + 1].value(degree);
            if next < value {
                violations.push(Violation {
                    degree,
                    k,
                    value,
                    next,
                });
            }
        }
    }

    let mut stabilization = BTreeMap::new();
    for degree in 0..max_degree {
        let values: Vec<usize> = tables.iter().map(|t| t.value(degree)).collect();
        stabilization.insert(degree, stabilization_of(&values));
    }

    Ok(ScanReport {
        manifold: m.name().to_string(),
        k_max,
        tables,
        violations,
        stabilization,
    })
}

/// Finds the smallest `k0` such that `b_degree(C_k)` is constant for
/// `k0 <= k <= k_max`, or `Unresolved` if the last two values still differ.
pub fn stability_scan(m: &ManifoldModel, degree: usize, k_max: usize) -> Result<Stabilization> {
    let tables = tables_up_to(m, k_max)?;
    let values: Vec<usize> = tables.iter().map(|t| t.value(degree)).collect();
    Ok(stabilization_of(&values))
}

/// One degree of the splitting ledger: `total` must equal
/// `previous + quotient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRow {
    pub degree: usize,
    /// `dim H_degree(C_k)`
    pub total: usize,
    /// `dim H_degree(C_{k-1})`
    pub previous: usize,
    /// `dim H_degree` of the `v0`-free part
    pub quotient: usize,
}

impl DecompositionRow {
    pub fn passes(&self) -> bool {
        self.total == self.previous + self.quotient
    }
}

/// Checks the splitting `b_i(C_k) = b_i(C_{k-1}) + dim H_i(quotient)` in
/// every degree, returning the three columns per degree.
///
/// For even `d` the quotient is the `v0`-free sub-complex, available only
/// under the hypothesis `H_c^0(M;Q^w) = 0`; closed orientable models are
/// refused. For odd `d` there is no differential and the identity is a
/// statement about monomial counts, valid unconditionally.
pub fn decomposition_check(m: &ManifoldModel, k: usize) -> Result<Vec<DecompositionRow>> {
    assert!(k >= 1, "decomposition compares k with k - 1");
    let (total, previous, quotient) = if m.d() % 2 == 1 {
        let total = betti_odd(m, k)?;
        let previous = betti_odd(m, k - 1)?;
        // Excluding the single degree-zero generator counts the v0-free
        // monomials.
        let mut reduced = m.homology_dims();
        reduced[0] -= 1;
        let quotient = sym_power_counts(&reduced, k);
        (total, previous, quotient)
    } else {
        let total = betti(m, k)?;
        let previous = betti(m, k - 1)?;
        let quotient = homology_of(&quotient_complex(m, k)?);
        (total, previous, quotient.values().to_vec())
    };

    let rows_len = total
        .values()
        .len()
        .max(previous.values().len())
        .max(quotient.len());
    let mut rows = Vec::with_capacity(rows_len);
    for degree in 0..rows_len {
        rows.push(DecompositionRow {
            degree,
            total: total.value(degree),
            previous: previous.value(degree),
            quotient: quotient.get(degree).copied().unwrap_or(0),
        });
    }
    Ok(rows)
}

/// Convenience: whether every degree of a decomposition ledger passes.
pub fn decomposition_passes(rows: &[DecompositionRow]) -> bool {
    rows.iter().all(DecompositionRow::passes)
}
