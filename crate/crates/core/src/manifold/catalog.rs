//! Built-in manifolds with pre-derived cohomological data.
//!
//! Every entry is produced by twisted Poincare duality
//! `hc_twisted[d-i] = dim H_i(M;Q)` and `hc_untwisted[d-i] = dim H_i(M;Q^w)`
//! from standard Betti numbers, with cup constants from the standard
//! intersection forms. The data is treated as derived, not authoritative:
//! entries are pushed through the full validation rules here, and the test
//! suite cross-checks them against hard-coded Betti numbers and the
//! structural invariants of the chain complex.

use super::{CupEntryDocument, CupResultDocument, ManifoldDocument, ManifoldModel};
use crate::error::{Error, Result};

/// Names of all built-in manifolds, in catalog order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "R1",
        "R2",
        "R3",
        "R4",
        "S1",
        "S2",
        "S3",
        "S4",
        "T2",
        "Sigma2",
        "Sigma_0_1",
        "Sigma_1_1",
        "RP2",
        "Klein",
        "Mobius",
    ]
}

/// Ordinary rational Betti numbers of a catalog manifold (degrees `0..=d`),
/// kept alongside the compactly supported data as an independent reference.
pub fn ordinary_betti(name: &str) -> Option<&'static [usize]> {
    let table: &[usize] = match name {
        "R1" => &[1, 0],
        "R2" | "Sigma_0_1" => &[1, 0, 0],
        "R3" => &[1, 0, 0, 0],
        "R4" => &[1, 0, 0, 0, 0],
        "S1" => &[1, 1],
        "S2" => &[1, 0, 1],
        "S3" => &[1, 0, 0, 1],
        "S4" => &[1, 0, 0, 0, 1],
        "T2" => &[1, 2, 1],
        "Sigma2" => &[1, 4, 1],
        "Sigma_1_1" => &[1, 2, 0],
        "RP2" => &[1, 0, 0],
        "Klein" => &[1, 1, 0],
        "Mobius" => &[1, 1, 0],
        _ => return None,
    };
    Some(table)
}

/// Looks up a built-in manifold by name (case-insensitive).
pub fn catalog(name: &str) -> Result<ManifoldModel> {
    let canonical = catalog_names()
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    let doc = document(canonical);
    ManifoldModel::from_document(&doc)
}

fn entry(i: usize, a: usize, j: usize, b: usize, results: &[(usize, i64)]) -> CupEntryDocument {
    CupEntryDocument {
        i,
        a,
        j,
        b,
        results: results
            .iter()
            .map(|&(c, coef)| CupResultDocument {
                c,
                coef: coef.to_string(),
            })
            .collect(),
    }
}

fn document(name: &str) -> ManifoldDocument {
    match name {
        // Euclidean spaces: H_c is one copy of Q in top degree; every cup
        // product lands above the top degree.
        "R1" => euclidean(name, 1),
        "R2" => euclidean(name, 2),
        "R3" => euclidean(name, 3),
        "R4" => euclidean(name, 4),
        "S1" => sphere(name, 1),
        "S2" => sphere(name, 2),
        "S3" => sphere(name, 3),
        "S4" => sphere(name, 4),
        "T2" => closed_surface(name, 1),
        "Sigma2" => closed_surface(name, 2),
        // Once-punctured sphere: an open disk, same data as the plane.
        "Sigma_0_1" => euclidean(name, 2),
        // Once-punctured torus: open orientable, H_c^1 of rank 2 carrying
        // the unimodular intersection form, no unit class.
        "Sigma_1_1" => ManifoldDocument {
            name: name.to_string(),
            dim: 2,
            orientable: true,
            closed: false,
            hc_untwisted: vec![0, 2, 1],
            hc_twisted: vec![0, 2, 1],
            cup: vec![entry(1, 1, 1, 2, &[(1, 1)])],
        },
        // Real projective plane: rationally trivial untwisted homology;
        // the twisted side is Q in top degree only. All products vanish.
        "RP2" => ManifoldDocument {
            name: name.to_string(),
            dim: 2,
            orientable: false,
            closed: true,
            hc_untwisted: vec![1, 0, 0],
            hc_twisted: vec![0, 0, 1],
            cup: vec![],
        },
        // Klein bottle: twisted classes in degrees 1 and 2; the only
        // product that could land in range is H_c^1 x H_c^1 -> H_c^2(Q),
        // which is zero because H^2(Klein;Q) = 0.
        "Klein" => ManifoldDocument {
            name: name.to_string(),
            dim: 2,
            orientable: false,
            closed: true,
            hc_untwisted: vec![1, 1, 0],
            hc_twisted: vec![0, 1, 1],
            cup: vec![],
        },
        // Open Moebius band: twisted homology vanishes rationally, so the
        // untwisted compactly supported side is zero in all degrees.
        "Mobius" => ManifoldDocument {
            name: name.to_string(),
            dim: 2,
            orientable: false,
            closed: false,
            hc_untwisted: vec![0, 0, 0],
            hc_twisted: vec![0, 1, 1],
            cup: vec![],
        },
        _ => unreachable!("document() is only called with canonical names"),
    }
}

fn euclidean(name: &str, d: usize) -> ManifoldDocument {
    let mut hc = vec![0; d + 1];
    hc[d] = 1;
    ManifoldDocument {
        name: name.to_string(),
        dim: d,
        orientable: true,
        closed: false,
        hc_untwisted: hc.clone(),
        hc_twisted: hc,
        cup: vec![],
    }
}

fn sphere(name: &str, d: usize) -> ManifoldDocument {
    let mut hc = vec![0; d + 1];
    hc[0] = 1;
    hc[d] = 1;
    ManifoldDocument {
        name: name.to_string(),
        dim: d,
        orientable: true,
        closed: true,
        hc_untwisted: hc.clone(),
        hc_twisted: hc,
        // 1 u 1 = 1 and 1 u s = s; s u s lands above the top degree.
        cup: vec![entry(0, 1, 0, 1, &[(1, 1)]), entry(0, 1, d, 1, &[(1, 1)])],
    }
}

/// Closed orientable surface of genus `g`: `H^1` has the symplectic basis
/// `a_1, b_1, ..., a_g, b_g` with `a_m u b_m` the fundamental class.
fn closed_surface(name: &str, genus: usize) -> ManifoldDocument {
    let mut cup = vec![entry(0, 1, 0, 1, &[(1, 1)]), entry(0, 1, 2, 1, &[(1, 1)])];
    for m in 0..genus {
        cup.push(entry(0, 1, 1, 2 * m + 1, &[(2 * m + 1, 1)]));
        cup.push(entry(0, 1, 1, 2 * m + 2, &[(2 * m + 2, 1)]));
        cup.push(entry(1, 2 * m + 1, 1, 2 * m + 2, &[(1, 1)]));
    }
    ManifoldDocument {
        name: name.to_string(),
        dim: 2,
        orientable: true,
        closed: true,
        hc_untwisted: vec![1, 2 * genus, 1],
        hc_twisted: vec![1, 2 * genus, 1],
        cup,
    }
}
