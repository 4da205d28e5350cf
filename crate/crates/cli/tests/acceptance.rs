//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line (run with `-- --nocapture` to see them). All equalities
//! are exact; rational arithmetic leaves no tolerance to tune.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::time::Instant;

use confspace::analyze::{
    decomposition_check, decomposition_passes, monotonicity_scan, stability_scan, Stabilization,
    Violation,
};
use confspace::cecomplex::build_complex;
use confspace::homology::{betti, betti_odd, homology_of};
use confspace::manifold::{catalog, catalog_names, ordinary_betti};

fn report(number: &str, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance {number} ({name}): PASS"),
        Err(panic) => {
            println!("acceptance {number} ({name}): FAIL");
            resume_unwind(panic);
        }
    }
}

fn even_catalog() -> Vec<&'static str> {
    catalog_names()
        .iter()
        .copied()
        .filter(|name| catalog(name).unwrap().d().is_multiple_of(2))
        .collect()
}

/// Catalog entries satisfying the splitting hypothesis `hc_twisted[0] = 0`.
fn hypothesis_catalog() -> Vec<&'static str> {
    catalog_names()
        .iter()
        .copied()
        .filter(|name| catalog(name).unwrap().v0_condition())
        .collect()
}

#[test]
fn acceptance_01_differential_validity() {
    report("01", "d^2 = 0 on the whole catalog through k = 10", || {
        let start = Instant::now();
        for name in even_catalog() {
            let m = catalog(name).unwrap();
            for k in 0..=10 {
                build_complex(&m, k)
                    .unwrap()
                    .check_d_squared()
                    .unwrap_or_else(|e| panic!("{name} k={k}: {e}"));
            }
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 60,
            "differential validity took {elapsed:?}, budget is 60s"
        );
    });
}

#[test]
fn acceptance_02_k1_duality_recovery() {
    report("02", "k = 1 recovers the manifold Betti numbers", || {
        for name in catalog_names() {
            let m = catalog(name).unwrap();
            let table = betti(&m, 1).unwrap();
            let d = m.d();
            let reference = ordinary_betti(name).unwrap();
            for degree in 0..=d {
                assert_eq!(
                    table.value(degree),
                    m.hc_twisted()[d - degree],
                    "{name} degree {degree} against hc_twisted"
                );
                assert_eq!(
                    table.value(degree),
                    reference[degree],
                    "{name} degree {degree} against the reference table"
                );
            }
        }
    });
}

#[test]
fn acceptance_03_sphere_non_monotonicity() {
    report("03", "2-sphere: the single top-degree drop", || {
        let s2 = catalog("S2").unwrap();
        let scan = monotonicity_scan(&s2, 3).unwrap();
        assert_eq!(
            scan.violations,
            vec![Violation {
                degree: 2,
                k: 1,
                value: 1,
                next: 0
            }]
        );
        assert_eq!(betti(&s2, 2).unwrap().values(), &[1]);
        for k in 2..=6 {
            assert_eq!(betti(&s2, k).unwrap().value(1), 0, "b_1 at k = {k}");
        }
    });
}

#[test]
fn acceptance_04_nonorientable_monotonicity() {
    report(
        "04",
        "non-orientable surfaces scan clean through k = 10",
        || {
            for name in ["RP2", "Klein"] {
                let m = catalog(name).unwrap();
                let scan = monotonicity_scan(&m, 10).unwrap();
                assert!(scan.violations.is_empty(), "{name}: {:?}", scan.violations);
            }
            let rp2 = catalog("RP2").unwrap();
            for k in 2..=10 {
                assert_eq!(betti(&rp2, k).unwrap().values(), &[1, 0, 0, 1], "k = {k}");
            }
        },
    );
}

#[test]
fn acceptance_05_open_orientable_monotonicity() {
    report("05", "open orientable manifolds scan clean", || {
        for (name, k_max) in [("R2", 10), ("R4", 8), ("Sigma_0_1", 8), ("Sigma_1_1", 8)] {
            let m = catalog(name).unwrap();
            let scan = monotonicity_scan(&m, k_max).unwrap();
            assert!(scan.violations.is_empty(), "{name}: {:?}", scan.violations);
        }
        // Independent oracle for the plane: the differential vanishes, so
        // Betti numbers are bare block dimensions.
        let r2 = catalog("R2").unwrap();
        for k in 2..=10usize {
            let complex = build_complex(&r2, k).unwrap();
            assert!(complex.diffs().all(|(_, m)| m.is_zero()), "k = {k}");
            let dims = complex.degree_dims();
            let table = betti(&r2, k).unwrap();
            assert_eq!(table.values(), &[1, 1], "k = {k}");
            for (degree, dim) in dims {
                assert_eq!(table.value(degree), dim, "k = {k} degree {degree}");
            }
        }
    });
}

/// Brute-force multiset enumeration over graded generators (`dims[i]`
/// generators in degree `i`, odd degrees exterior), counting length-`k`
/// monomials by total degree. Independent of the shipping count routine.
fn enumerate_sym_counts(dims: &[usize], k: usize) -> Vec<usize> {
    let mut gens: Vec<(usize, bool)> = Vec::new();
    for (degree, &count) in dims.iter().enumerate() {
        for _ in 0..count {
            gens.push((degree, degree % 2 == 1));
        }
    }
    let mut counts = vec![0usize; (dims.len() - 1) * k + 1];
    recurse(&gens, k, 0, &mut counts);
    counts
}

fn recurse(gens: &[(usize, bool)], remaining: usize, degree: usize, counts: &mut Vec<usize>) {
    if remaining == 0 {
        counts[degree] += 1;
        return;
    }
    let Some((&(gen_degree, odd), rest)) = gens.split_first() else {
        return;
    };
    let cap = if odd { 1 } else { remaining };
    for mult in 0..=cap {
        recurse(rest, remaining - mult, degree + mult * gen_degree, counts);
    }
}

#[test]
fn acceptance_06_decomposition_identity() {
    report(
        "06",
        "b(C_k) = b(C_{k-1}) + b(quotient) in every degree",
        || {
            for name in hypothesis_catalog() {
                let m = catalog(name).unwrap();
                for k in 1..=8 {
                    let rows = decomposition_check(&m, k).unwrap();
                    assert!(decomposition_passes(&rows), "{name} k = {k}: {rows:?}");
                }
            }
            // Odd dimensions: the same identity is a statement about symmetric
            // power bases; check it against brute-force enumeration.
            for name in ["S1", "S3", "R3"] {
                let m = catalog(name).unwrap();
                let dims = m.homology_dims();
                let mut v0_free_dims = dims.clone();
                v0_free_dims[0] -= 1;
                for k in 1..=8usize {
                    let total = enumerate_sym_counts(&dims, k);
                    let previous = enumerate_sym_counts(&dims, k - 1);
                    let v0_free = enumerate_sym_counts(&v0_free_dims, k);
                    for degree in 0..total.len() {
                        let prev = previous.get(degree).copied().unwrap_or(0);
                        let free = v0_free.get(degree).copied().unwrap_or(0);
                        assert_eq!(total[degree], prev + free, "{name} k = {k} degree {degree}");
                    }
                    let rows = decomposition_check(&m, k).unwrap();
                    assert!(decomposition_passes(&rows), "{name} k = {k}");
                    for row in rows {
                        assert_eq!(row.total, total.get(row.degree).copied().unwrap_or(0));
                    }
                }
            }
        },
    );
}

#[test]
fn acceptance_07_stability_resolves() {
    // First-computation values, frozen: (manifold, [(k0, value); degrees 0..=4]).
    const FIXTURE: &[(&str, [(usize, usize); 5])] = &[
        ("R1", [(0, 1), (0, 0), (0, 0), (0, 0), (0, 0)]),
        ("R2", [(0, 1), (2, 1), (0, 0), (0, 0), (0, 0)]),
        ("R3", [(0, 1), (0, 0), (0, 0), (0, 0), (0, 0)]),
        ("R4", [(0, 1), (0, 0), (0, 0), (2, 1), (0, 0)]),
        ("S1", [(0, 1), (1, 1), (0, 0), (0, 0), (0, 0)]),
        ("S2", [(0, 1), (0, 0), (2, 0), (3, 1), (0, 0)]),
        ("S3", [(0, 1), (0, 0), (0, 0), (1, 1), (0, 0)]),
        ("S4", [(0, 1), (0, 0), (0, 0), (0, 0), (2, 0)]),
        ("T2", [(0, 1), (1, 2), (3, 3), (4, 5), (5, 7)]),
        ("Sigma2", [(0, 1), (1, 4), (2, 6), (4, 16), (5, 28)]),
        ("Sigma_0_1", [(0, 1), (2, 1), (0, 0), (0, 0), (0, 0)]),
        ("Sigma_1_1", [(0, 1), (1, 2), (3, 4), (4, 5), (5, 7)]),
        ("RP2", [(0, 1), (0, 0), (0, 0), (2, 1), (0, 0)]),
        ("Klein", [(0, 1), (1, 1), (2, 1), (3, 2), (4, 2)]),
        ("Mobius", [(0, 1), (1, 1), (0, 0), (0, 0), (0, 0)]),
    ];

    report("07", "stability resolves by k = 15 in degrees <= 4", || {
        assert_eq!(FIXTURE.len(), catalog_names().len());
        for &(name, expected) in FIXTURE {
            let m = catalog(name).unwrap();
            for (degree, &(at_k, value)) in expected.iter().enumerate() {
                let stab = stability_scan(&m, degree, 15).unwrap();
                assert_eq!(
                    stab,
                    Stabilization::Resolved { at_k, value },
                    "{name} degree {degree}"
                );
            }
        }
    });
}

#[test]
fn acceptance_08_euler_cross_check() {
    report(
        "08",
        "chain and homology Euler characteristics agree",
        || {
            for name in even_catalog() {
                let m = catalog(name).unwrap();
                for k in 0..=10 {
                    let complex = build_complex(&m, k).unwrap();
                    let from_chains = complex.euler_characteristic();
                    let from_homology = homology_of(&complex).euler_characteristic();
                    assert_eq!(from_chains, from_homology, "{name} k = {k}");
                    confspace::homology::euler(&m, k)
                        .unwrap_or_else(|e| panic!("{name} k = {k}: {e}"));
                }
            }
        },
    );
}

#[test]
fn acceptance_09_odd_dimension_formula() {
    report("09", "odd-d symmetric power formula through k = 20", || {
        let s1 = catalog("S1").unwrap();
        let s3 = catalog("S3").unwrap();
        for k in 1..=20usize {
            let t1 = betti_odd(&s1, k).unwrap();
            assert_eq!(t1.values(), &[1, 1], "S1 k = {k}");
            let t3 = betti_odd(&s3, k).unwrap();
            assert_eq!(t3.values(), &[1, 0, 0, 1], "S3 k = {k}");
        }
        // Independent multiset-enumeration oracle, full tables.
        for name in ["S1", "S3", "R1", "R3"] {
            let m = catalog(name).unwrap();
            let dims = m.homology_dims();
            for k in 1..=20usize {
                let table = betti_odd(&m, k).unwrap();
                let oracle = enumerate_sym_counts(&dims, k);
                for degree in 0..oracle.len().max(table.values().len()) {
                    assert_eq!(
                        table.value(degree),
                        oracle.get(degree).copied().unwrap_or(0),
                        "{name} k = {k} degree {degree}"
                    );
                }
            }
        }
    });
}

#[test]
fn acceptance_10_byte_identical_output() {
    report("10", "repeated CLI runs are byte-identical", || {
        let commands: &[&[&str]] = &[
            &["betti", "--manifold", "S2", "--k", "2", "--format", "json"],
            &[
                "betti",
                "--manifold",
                "Sigma2",
                "--k",
                "6",
                "--format",
                "table",
            ],
            &[
                "betti",
                "--manifold",
                "Klein",
                "--k",
                "5",
                "--format",
                "csv",
            ],
            &[
                "scan-monotone",
                "--manifold",
                "S2",
                "--k-max",
                "3",
                "--format",
                "json",
            ],
            &[
                "scan-monotone",
                "--manifold",
                "RP2",
                "--k-max",
                "8",
                "--format",
                "table",
            ],
            &[
                "scan-stability",
                "--manifold",
                "Sigma_1_1",
                "--k-max",
                "9",
                "--format",
                "json",
            ],
            &[
                "check-decomposition",
                "--manifold",
                "Mobius",
                "--k",
                "4",
                "--format",
                "json",
            ],
            &[
                "check-decomposition",
                "--manifold",
                "R2",
                "--k",
                "2",
                "--format",
                "csv",
            ],
            &["validate", "--manifold", "T2", "--format", "json"],
            &["catalog", "--format", "json"],
            &["catalog", "--manifold", "S4", "--format", "table"],
        ];
        for args in commands {
            let first = Command::new(env!("CARGO_BIN_EXE_confspace"))
                .args(*args)
                .output()
                .expect("binary runs");
            let second = Command::new(env!("CARGO_BIN_EXE_confspace"))
                .args(*args)
                .output()
                .expect("binary runs");
            assert!(first.status.success(), "command {args:?} failed");
            assert_eq!(first.status.code(), second.status.code());
            assert_eq!(first.stdout, second.stdout, "outputs differ for {args:?}");
        }
    });
}
