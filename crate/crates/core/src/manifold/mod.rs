//! The manifold input data model and its validation rules.
//!
//! A manifold `M` of dimension `d` enters the computation through exactly
//! three pieces of data: the dimensions of its compactly supported
//! cohomology with ordinary coefficients (`hc_untwisted`) and with
//! coefficients in the orientation local system (`hc_twisted`), and the
//! cup-product structure constants
//! `H_c^i(M;Q^w) (x) H_c^j(M;Q^w) -> H_c^{i+j}(M;Q)` on chosen bases.
//! Nothing else about `M` is consumed anywhere.
//!
//! By twisted Poincare duality `hc_twisted[d-i]` equals the ordinary `i`-th
//! Betti number of `M`, so the arrays are easy to produce for standard
//! manifolds; [`catalog`] ships a set of pre-derived entries. Basis choice
//! changes the cup table but none of the Betti outputs, which are
//! basis-independent.

mod catalog;

pub use catalog::{catalog, catalog_names, ordinary_betti};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationIssue};
use crate::rational::{format_rational, parse_rational, Rational};

/// The on-disk manifold document (JSON). Field names and shapes are stable;
/// unknown fields are rejected. Cup indices `a`, `b`, `c` are 1-based and
/// coefficients are strings `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDocument {
    pub name: String,
    pub dim: usize,
    pub orientable: bool,
    pub closed: bool,
    pub hc_untwisted: Vec<usize>,
    pub hc_twisted: Vec<usize>,
    pub cup: Vec<CupEntryDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupEntryDocument {
    pub i: usize,
    pub a: usize,
    pub j: usize,
    pub b: usize,
    pub results: Vec<CupResultDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupResultDocument {
    pub c: usize,
    pub coef: String,
}

/// `(i, a, j, b)`: degrees and 0-based basis indices of a product pair.
type CupKey = (usize, usize, usize, usize);
/// Result classes of one product: 0-based index and coefficient.
type CupValue = Vec<(usize, Rational)>;

/// The bilinear cup-product data, fully symmetrized and 0-based.
///
/// Both orientations of every pair are materialized, related by the graded
/// commutativity sign `(-1)^{ij}`, so lookups never need to symmetrize.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CupTable {
    pairs: BTreeMap<CupKey, CupValue>,
}

const EMPTY: &[(usize, Rational)] = &[];

impl CupTable {
    /// The product of the `a`-th basis class of `H_c^i(M;Q^w)` with the
    /// `b`-th class of `H_c^j(M;Q^w)`, as `(index, coefficient)` pairs in
    /// `H_c^{i+j}(M;Q)`. All indices 0-based. Missing entries mean zero.
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> &[(usize, Rational)] {
        self.pairs.get(&(i, a, j, b)).map_or(EMPTY, Vec::as_slice)
    }

    fn insert(&mut self, key: CupKey, value: CupValue) {
        if !value.is_empty() {
            self.pairs.insert(key, value);
        }
    }
}

/// A validated manifold model. Construct via [`ManifoldModel::from_document`]
/// or [`catalog`]; every instance satisfies the invariants below.
///
/// * `hc_twisted[d] = 1` (connectedness; this slot carries the class whose
///   suspension is the degree-zero generator `v0`),
/// * orientable implies `hc_twisted = hc_untwisted`,
/// * closed iff `hc_untwisted[0] = 1`,
/// * `hc_twisted[0] = 1` iff closed and orientable,
/// * the cup table is graded-commutative and bounded by the top degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    name: String,
    d: usize,
    orientable: bool,
    closed: bool,
    hc_untwisted: Vec<usize>,
    hc_twisted: Vec<usize>,
    cup: CupTable,
}

impl ManifoldModel {
    /// Validates a document and returns the model, or every rule violation
    /// found.
    pub fn from_document(doc: &ManifoldDocument) -> Result<ManifoldModel> {
        let mut issues = Vec::new();
        let d = doc.dim;
        if d == 0 {
            issues.push(ValidationIssue::ZeroDimension);
            return Err(Error::Validation(issues));
        }
        for (which, arr) in [
            ("hc_untwisted", &doc.hc_untwisted),
            ("hc_twisted", &doc.hc_twisted),
        ] {
            if arr.len() != d + 1 {
                issues.push(ValidationIssue::ArrayLength {
                    which,
                    expected: d + 1,
                    got: arr.len(),
                });
            }
        }
        if !issues.is_empty() {
            // Degree-indexed checks below assume well-shaped arrays.
            return Err(Error::Validation(issues));
        }

        if doc.hc_twisted[d] != 1 {
            issues.push(ValidationIssue::Connectedness {
                got: doc.hc_twisted[d],
            });
        }
        if doc.orientable {
            for degree in 0..=d {
                if doc.hc_twisted[degree] != doc.hc_untwisted[degree] {
                    issues.push(ValidationIssue::OrientabilityMismatch { degree });
                    break;
                }
            }
        }
        if doc.closed != (doc.hc_untwisted[0] == 1) {
            issues.push(ValidationIssue::ClosednessFlag {
                closed: doc.closed,
                hc0: doc.hc_untwisted[0],
            });
        }
        let expected_tw0 = usize::from(doc.closed && doc.orientable);
        if doc.hc_twisted[0] != expected_tw0 {
            issues.push(ValidationIssue::TwistedDegreeZero {
                expected: expected_tw0,
                got: doc.hc_twisted[0],
            });
        }

        let cup = validate_cup(doc, &mut issues);

        if issues.is_empty() {
            Ok(ManifoldModel {
                name: doc.name.clone(),
                d,
                orientable: doc.orientable,
                closed: doc.closed,
                hc_untwisted: doc.hc_untwisted.clone(),
                hc_twisted: doc.hc_twisted.clone(),
                cup,
            })
        } else {
            Err(Error::Validation(issues))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// `dim H_c^j(M;Q)` for `j = 0..=d`.
    pub fn hc_untwisted(&self) -> &[usize] {
        &self.hc_untwisted
    }

    /// `dim H_c^j(M;Q^w)` for `j = 0..=d`.
    pub fn hc_twisted(&self) -> &[usize] {
        &self.hc_twisted
    }

    pub fn cup(&self) -> &CupTable {
        &self.cup
    }

    /// Whether `H_c^0(M;Q^w) = 0`, i.e. `M` is non-compact or
    /// non-orientable. Exactly under this condition the splitting off of
    /// the previous configuration space applies.
    pub fn v0_condition(&self) -> bool {
        self.hc_twisted[0] == 0
    }

    /// Ordinary rational homology dimensions `dim H_i(M;Q)` for
    /// `i = 0..=d`, read off from twisted Poincare duality.
    pub fn homology_dims(&self) -> Vec<usize> {
        (0..=self.d).map(|i| self.hc_twisted[self.d - i]).collect()
    }

    /// Renders the model back into the document form, emitting one canonical
    /// representative per unordered cup pair.
    pub fn to_document(&self) -> ManifoldDocument {
        let mut cup = Vec::new();
        for (&(i, a, j, b), results) in &self.cup.pairs {
            if (i, a) > (j, b) {
                continue;
            }
            cup.push(CupEntryDocument {
                i,
                a: a + 1,
                j,
                b: b + 1,
                results: results
                    .iter()
                    .map(|(c, coef)| CupResultDocument {
                        c: c + 1,
                        coef: format_rational(coef),
                    })
                    .collect(),
            });
        }
        ManifoldDocument {
            name: self.name.clone(),
            dim: self.d,
            orientable: self.orientable,
            closed: self.closed,
            hc_untwisted: self.hc_untwisted.clone(),
            hc_twisted: self.hc_twisted.clone(),
            cup,
        }
    }
}

fn validate_cup(doc: &ManifoldDocument, issues: &mut Vec<ValidationIssue>) -> CupTable {
    use num_traits::Zero;

    let d = doc.dim;
    // Normalized stored entries, 0-based.
    let mut stored: BTreeMap<CupKey, CupValue> = BTreeMap::new();

    for entry in &doc.cup {
        let (i, j) = (entry.i, entry.j);
        if i > d || j > d {
            issues.push(ValidationIssue::CupDegreeOutOfRange { i, j });
            continue;
        }
        if i + j > d {
            issues.push(ValidationIssue::CupAboveTopDegree {
                i,
                a: entry.a,
                j,
                b: entry.b,
            });
            continue;
        }
        let mut in_range = true;
        for (side, index, bound) in [
            ("left", entry.a, doc.hc_twisted[i]),
            ("right", entry.b, doc.hc_twisted[j]),
        ] {
            if index == 0 || index > bound {
                issues.push(ValidationIssue::CupIndexOutOfRange {
                    i,
                    a: entry.a,
                    j,
                    b: entry.b,
                    c: index,
                    side,
                });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        // Accumulate result classes, parsing coefficients.
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut ok = true;
        for res in &entry.results {
            if res.c == 0 || res.c > doc.hc_untwisted[i + j] {
                issues.push(ValidationIssue::CupIndexOutOfRange {
                    i,
                    a: entry.a,
                    j,
                    b: entry.b,
                    c: res.c,
                    side: "result",
                });
                ok = false;
                continue;
            }
            match parse_rational(&res.coef) {
                Some(coef) => {
                    let slot = acc.entry(res.c - 1).or_insert_with(Rational::zero);
                    *slot += coef;
                }
                None => {
                    issues.push(ValidationIssue::BadCoefficient {
                        i,
                        a: entry.a,
                        j,
                        b: entry.b,
                        text: res.coef.clone(),
                    });
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        acc.retain(|_, v| !v.is_zero());
        let key = (i, entry.a - 1, j, entry.b - 1);
        if stored.contains_key(&key) {
            issues.push(ValidationIssue::CupDuplicate {
                i,
                a: entry.a,
                j,
                b: entry.b,
            });
            continue;
        }
        stored.insert(key, acc.into_iter().collect());
    }

    // Symmetrize: the transpose of (i,a,j,b) carries the sign (-1)^{ij}.
    let mut table = CupTable::default();
    for (&(i, a, j, b), value) in &stored {
        let sign_flips = (i * j) % 2 == 1;
        let transpose_key = (j, b, i, a);
        let transposed: Vec<(usize, Rational)> = value
            .iter()
            .map(|(c, q)| (*c, if sign_flips { -q } else { q.clone() }))
            .collect();
        if transpose_key == (i, a, j, b) {
            // Diagonal entry: odd-degree squares must vanish.
            if sign_flips && !value.is_empty() {
                issues.push(ValidationIssue::CupCommutativity {
                    i,
                    a: a + 1,
                    j,
                    b: b + 1,
                });
                continue;
            }
        } else if let Some(other) = stored.get(&transpose_key) {
            if *other != transposed {
                // Report once per unordered pair.
                if (i, a) <= (j, b) {
                    issues.push(ValidationIssue::CupCommutativity {
                        i,
                        a: a + 1,
                        j,
                        b: b + 1,
                    });
                }
                continue;
            }
        }
        table.insert((i, a, j, b), value.clone());
        if transpose_key != (i, a, j, b) && !stored.contains_key(&transpose_key) {
            table.insert(transpose_key, transposed);
        }
    }
    table
}

/// Validates raw document data, the operation behind the CLI `validate`
/// command.
pub fn validate(doc: &ManifoldDocument) -> Result<ManifoldModel> {
    ManifoldModel::from_document(doc)
}
