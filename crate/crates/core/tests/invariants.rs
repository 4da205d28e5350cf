//! Structural invariants of the chain complex, checked across modules:
//! grading contracts, block-dimension identities, the `v0` splitting
//! bijection, and independence of the homology from how weights are
//! aggregated.

use std::collections::BTreeMap;
use std::collections::HashMap;

use confspace::cecomplex::{build_complex, build_generators};
use confspace::homology::{betti, homology_of};
use confspace::manifold::{catalog, catalog_names};
use confspace::{sym_basis, Monomial, SparseRationalMatrix};

fn even_catalog() -> Vec<&'static str> {
    catalog_names()
        .iter()
        .copied()
        .filter(|name| catalog(name).unwrap().d().is_multiple_of(2))
        .collect()
}

#[test]
fn every_basis_monomial_has_length_k_and_weight_in_range() {
    for name in even_catalog() {
        let m = catalog(name).unwrap();
        for k in 0..=6 {
            let complex = build_complex(&m, k).unwrap();
            for ((degree, weight), basis) in complex.blocks() {
                assert!(weight <= k / 2, "{name} k={k}");
                for mono in basis {
                    assert_eq!(mono.length(), k, "{name} k={k}");
                    assert_eq!(mono.weight(), weight, "{name} k={k}");
                    assert_eq!(mono.degree(), degree, "{name} k={k}");
                }
            }
        }
    }
}

#[test]
fn differential_shifts_degree_down_and_weight_up() {
    for name in even_catalog() {
        let m = catalog(name).unwrap();
        for k in 0..=6 {
            let complex = build_complex(&m, k).unwrap();
            let system = complex.system();
            for ((degree, weight), basis) in complex.blocks() {
                for mono in basis {
                    let image = system.extend_differential(mono).unwrap();
                    for (term, _) in image.iter() {
                        assert_eq!(term.degree(), degree - 1);
                        assert_eq!(term.weight(), weight + 1);
                        assert_eq!(term.length(), k);
                    }
                }
            }
        }
    }
}

#[test]
fn block_dimensions_factor_through_symmetric_powers() {
    for name in even_catalog() {
        let m = catalog(name).unwrap();
        let system = build_generators(&m).unwrap();
        let v_ids = system.v_ids().to_vec();
        let w_ids = system.w_ids().to_vec();
        for k in 0..=7 {
            let complex = build_complex(&m, k).unwrap();
            for weight in 0..=(k / 2) {
                let expected = sym_basis(system.table(), &v_ids, k - 2 * weight)
                    .unwrap()
                    .len()
                    * sym_basis(system.table(), &w_ids, weight).unwrap().len();
                let total: usize = complex
                    .blocks()
                    .filter(|&((_, w), _)| w == weight)
                    .map(|(_, basis)| basis.len())
                    .sum();
                assert_eq!(total, expected, "{name} k={k} weight={weight}");
            }
        }
    }
}

#[test]
fn monomials_with_v0_biject_with_the_previous_complex() {
    // Removing one v0 factor identifies the v0-divisible part of the k-point
    // basis with the whole (k-1)-point basis, block by block.
    for name in even_catalog() {
        let m = catalog(name).unwrap();
        for k in 1..=7usize {
            let current = build_complex(&m, k).unwrap();
            let previous = build_complex(&m, k - 1).unwrap();
            let v0 = current.system().v0();

            let mut divisible: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for ((degree, weight), basis) in current.blocks() {
                let count = basis.iter().filter(|mono| mono.contains(v0)).count();
                if count > 0 {
                    divisible.insert((degree, weight), count);
                }
            }
            let mut expected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for (key, basis) in previous.blocks() {
                expected.insert(key, basis.len());
            }
            assert_eq!(divisible, expected, "{name} k={k}");
        }
    }
}

/// Assembles the full differential at one degree with all weights
/// interleaved into a single matrix, an independent aggregation path.
fn aggregated_degree_matrix(
    complex: &confspace::cecomplex::WeightGradedComplex,
    degree: usize,
) -> SparseRationalMatrix {
    let source: Vec<&Monomial> = complex
        .blocks()
        .filter(|&((d, _), _)| d == degree)
        .flat_map(|(_, basis)| basis.iter())
        .collect();
    let target: Vec<&Monomial> = if degree == 0 {
        Vec::new()
    } else {
        complex
            .blocks()
            .filter(|&((d, _), _)| d == degree - 1)
            .flat_map(|(_, basis)| basis.iter())
            .collect()
    };
    let index: HashMap<&Monomial, usize> = target
        .iter()
        .enumerate()
        .map(|(row, &mono)| (mono, row))
        .collect();
    let mut matrix = SparseRationalMatrix::new(target.len(), source.len());
    for (col, mono) in source.iter().enumerate() {
        let chain = complex.system().extend_differential(mono).unwrap();
        for (term, coef) in chain.iter() {
            matrix.set(index[term], col, coef.clone());
        }
    }
    matrix
}

#[test]
fn homology_is_independent_of_weight_aggregation() {
    for name in ["S2", "Sigma_1_1"] {
        let m = catalog(name).unwrap();
        for k in 0..=6 {
            let complex = build_complex(&m, k).unwrap();
            let expected = homology_of(&complex);
            let top = complex.max_degree().unwrap();
            let dims = complex.degree_dims();
            let ranks: Vec<usize> = (0..=top + 1)
                .map(|degree| aggregated_degree_matrix(&complex, degree).rank())
                .collect();
            for degree in 0..=top {
                let dim = dims.get(&degree).copied().unwrap_or(0);
                let b = dim - ranks[degree] - ranks[degree + 1];
                assert_eq!(b, expected.value(degree), "{name} k={k} degree={degree}");
            }
        }
    }
}

#[test]
fn betti_vanishes_above_the_chain_degree_bound() {
    for name in even_catalog() {
        let m = catalog(name).unwrap();
        let system = build_generators(&m).unwrap();
        let max_v_degree = system
            .v_ids()
            .iter()
            .map(|&id| system.table().get(id).unwrap().degree)
            .max()
            .unwrap();
        let d = m.d();
        for k in 0..=6usize {
            let bound = (0..=(k / 2))
                .map(|w| (k - 2 * w) * max_v_degree + w * (2 * d - 1))
                .max()
                .unwrap();
            let table = betti(&m, k).unwrap();
            assert!(
                table.values().len() <= bound + 1,
                "{name} k={k}: values {:?} exceed bound {bound}",
                table.values()
            );
            assert!(table.top_degree().unwrap() <= bound);
        }
    }
}
