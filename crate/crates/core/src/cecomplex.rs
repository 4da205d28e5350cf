//! The weight-graded chain complex computing `H_*(C_k(M); Q)` for even `d`.
//!
//! Two suspended graded vector spaces are read off the manifold data:
//! `V` has `hc_twisted[d-i]` generators in degree `i` (for `0 <= i <= d`)
//! and `W` has `hc_untwisted[2d-1-j]` generators in degree `j` (for
//! `d-1 <= j <= 2d-1`). The algebra in point count `k` is
//!
//! ```text
//! sum over weights w <= k/2 of  Sym^{k-2w}(V) (x) Sym^w(W)
//! ```
//!
//! where `V`-factors have length 1 and `W`-factors length 2, so every basis
//! monomial has length `k`. The differential is defined on pairs of
//! `V`-generators by suspending the cup product of the underlying classes,
//!
//! ```text
//! d(a ^ b) = (-1)^{(d-1) deg(b)} * suspension(a u b),
//! ```
//!
//! and extends to products as a coderivation: sum over unordered pairs of
//! `V`-factors, each pair moved to the front with its Koszul sign, replaced
//! by its image, and the result multiplied back into the remaining factors.
//! `W`-generators are cycles. The differential drops the degree by 1 and
//! raises the weight by 1, and squares to zero; the test suite verifies
//! `d^2 = 0` exactly on the whole catalog, which pins down every sign
//! convention above.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gradedalg::{
    koszul_canonicalize, sym_basis, Chain, GenId, GeneratorTable, Monomial, Space,
    SparseRationalMatrix,
};
use crate::manifold::ManifoldModel;
use crate::rational::Rational;

/// The generators `V` and `W` derived from a manifold, with the pairwise
/// differential precomputed for every unordered pair of `V`-generators.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    d: usize,
    table: GeneratorTable,
    v_ids: Vec<GenId>,
    w_ids: Vec<GenId>,
    pair_table: BTreeMap<(GenId, GenId), Chain>,
}

/// Builds the generator system of an even-dimensional manifold model.
pub fn build_generators(m: &ManifoldModel) -> Result<GeneratorSystem> {
    let d = m.d();
    if !d.is_multiple_of(2) {
        return Err(Error::OddDimension { d });
    }
    let mut specs = Vec::new();
    for degree in 0..=d {
        let src_deg = d - degree;
        for _ in 0..m.hc_twisted()[src_deg] {
            specs.push((Space::V, degree, src_deg));
        }
    }
    for degree in (d - 1)..=(2 * d - 1) {
        let src_deg = 2 * d - 1 - degree;
        for _ in 0..m.hc_untwisted()[src_deg] {
            specs.push((Space::W, degree, src_deg));
        }
    }
    let table = GeneratorTable::build(specs);
    let v_ids = table.ids_in(Space::V);
    let w_ids = table.ids_in(Space::W);

    let mut system = GeneratorSystem {
        d,
        table,
        v_ids,
        w_ids,
        pair_table: BTreeMap::new(),
    };
    for (pos, &a) in system.v_ids.iter().enumerate() {
        for &b in &system.v_ids[pos..] {
            let chain = system.pair_differential_from(m, a, b)?;
            system.pair_table.insert((a, b), chain);
        }
    }
    Ok(system)
}

impl GeneratorSystem {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn v_ids(&self) -> &[GenId] {
        &self.v_ids
    }

    pub fn w_ids(&self) -> &[GenId] {
        &self.w_ids
    }

    /// The unique degree-zero `V`-generator.
    pub fn v0(&self) -> GenId {
        self.table
            .lookup(Space::V, 0, 0)
            .expect("connectedness guarantees a degree-zero generator")
    }

    /// Evaluates the defining equation of the differential on one ordered
    /// pair of `V`-generators, reading the cup product off the manifold.
    fn pair_differential_from(&self, m: &ManifoldModel, a: GenId, b: GenId) -> Result<Chain> {
        let ga = self.table.get(a)?;
        let gb = self.table.get(b)?;
        assert!(
            ga.space == Space::V && gb.space == Space::V,
            "pair differential is defined on V-generators"
        );
        let mut out = Chain::zero();
        let target_src = ga.src_deg + gb.src_deg;
        if target_src > self.d {
            return Ok(out);
        }
        // Suspension of a class in H_c^{target_src}(M;Q) lands in W-degree
        // 2d-1-target_src. Since d is even, (d-1)*deg(b) is odd exactly
        // when deg(b) is.
        let w_degree = 2 * self.d - 1 - target_src;
        let negative = ((self.d - 1) * gb.degree) % 2 == 1;
        for (c_index, coef) in m.cup().product(ga.src_deg, ga.index, gb.src_deg, gb.index) {
            let w = self
                .table
                .lookup(Space::W, w_degree, *c_index)
                .expect("validated cup entries index existing W-generators");
            let (_, monomial) = koszul_canonicalize(&self.table, &[w])?;
            let signed = if negative { -coef } else { coef.clone() };
            out.add_term(monomial, signed);
        }
        Ok(out)
    }

    /// The differential of the product of two `V`-generators, a chain of
    /// `W`-generators. For arguments out of canonical order the stored value
    /// is transposed with the Koszul sign `(-1)^{deg(a) deg(b)}`.
    pub fn pair_differential(&self, a: GenId, b: GenId) -> Result<Chain> {
        let (key, flip) = if a <= b {
            ((a, b), false)
        } else {
            let odd_a = self.table.get(a)?.is_odd();
            let odd_b = self.table.get(b)?.is_odd();
            ((b, a), odd_a && odd_b)
        };
        let chain = self
            .pair_table
            .get(&key)
            .ok_or(Error::UnknownGenerator(key.0))?;
        if !flip {
            return Ok(chain.clone());
        }
        let mut out = Chain::zero();
        for (mono, coef) in chain.iter() {
            out.add_term(mono.clone(), -coef);
        }
        Ok(out)
    }

    /// Extends the differential over a monomial by the coderivation rule:
    /// for each unordered pair of `V`-factor positions `p < q`, move the two
    /// factors to the front (Koszul sign), apply the pair differential, and
    /// multiply the resulting `W`-generator back into the remaining factors.
    pub fn extend_differential(&self, x: &Monomial) -> Result<Chain> {
        let vs = x.v_factors();
        let mut odd = Vec::with_capacity(vs.len());
        for &id in vs {
            odd.push(self.table.get(id)?.is_odd());
        }
        // prefix[t] = parity of deg(x_1) + ... + deg(x_t)
        let mut prefix = vec![false; vs.len() + 1];
        for (t, &o) in odd.iter().enumerate() {
            prefix[t + 1] = prefix[t] ^ o;
        }

        let mut out = Chain::zero();
        for p in 0..vs.len() {
            for q in (p + 1)..vs.len() {
                let pd = &self.pair_table[&(vs[p], vs[q])];
                if pd.is_zero() {
                    continue;
                }
                // Koszul sign of extracting x_p then x_q to the front.
                let negative = (odd[p] & prefix[p]) ^ (odd[q] & (prefix[q] ^ odd[p]));
                let mut rest: Vec<GenId> = Vec::with_capacity(x.length());
                rest.extend(
                    vs.iter()
                        .enumerate()
                        .filter(|&(t, _)| t != p && t != q)
                        .map(|(_, &id)| id),
                );
                rest.extend(x.w_factors().iter().copied());
                for (w_mono, coef) in pd.iter() {
                    let mut seq = Vec::with_capacity(rest.len() + 1);
                    seq.extend(w_mono.w_factors().iter().copied());
                    seq.extend(rest.iter().copied());
                    let (sign, mono) = koszul_canonicalize(&self.table, &seq)?;
                    if sign == 0 {
                        continue;
                    }
                    let mut value: Rational = coef.clone();
                    if (sign < 0) ^ negative {
                        value = -value;
                    }
                    out.add_term(mono, value);
                }
            }
        }
        debug_assert!(
            out.is_zero()
                || (out.degree() == Some(x.degree() - 1)
                    && out.iter().all(|(m, _)| {
                        m.weight() == x.weight() + 1 && m.length() == x.length()
                    })),
            "differential must drop degree by 1 and raise weight by 1"
        );
        Ok(out)
    }
}

/// Per-(degree, weight) bases of the algebra at point count `k`, with the
/// sparse differential blocks between them.
#[derive(Debug, Clone)]
pub struct WeightGradedComplex {
    k: usize,
    system: GeneratorSystem,
    /// (degree, weight) -> ordered basis.
    blocks: BTreeMap<(usize, usize), Vec<Monomial>>,
    /// (degree, weight) -> matrix of the differential into
    /// (degree - 1, weight + 1). Present for every nonempty source block.
    diff: BTreeMap<(usize, usize), SparseRationalMatrix>,
}

/// Builds the full complex of an even-dimensional manifold model.
pub fn build_complex(m: &ManifoldModel, k: usize) -> Result<WeightGradedComplex> {
    let system = build_generators(m)?;
    assemble(system, k, true)
}

/// Builds the sub-complex spanned by monomials with no `v0` factor. This is
/// isomorphic to the quotient by the ideal of `v0`, because the
/// differential only deletes `V`-factors and, under the hypothesis
/// `hc_twisted[0] = 0`, never pairs `v0` with anything nontrivially.
///
/// Refuses closed orientable models, where the hypothesis fails.
pub fn quotient_complex(m: &ManifoldModel, k: usize) -> Result<WeightGradedComplex> {
    let system = build_generators(m)?;
    if !m.v0_condition() {
        return Err(Error::Hypothesis(format!(
            "the v0-quotient splitting requires H_c^0(M;Q^w) = 0 (a non-compact or \
             non-orientable manifold), but \"{}\" is closed and orientable",
            m.name()
        )));
    }
    assemble(system, k, false)
}

fn assemble(system: GeneratorSystem, k: usize, include_v0: bool) -> Result<WeightGradedComplex> {
    let v_gens: Vec<GenId> = if include_v0 {
        system.v_ids.clone()
    } else {
        let v0 = system.v0();
        system
            .v_ids
            .iter()
            .copied()
            .filter(|&id| id != v0)
            .collect()
    };

    let mut blocks: BTreeMap<(usize, usize), Vec<Monomial>> = BTreeMap::new();
    for weight in 0..=(k / 2) {
        let v_basis = sym_basis(&system.table, &v_gens, k - 2 * weight)?;
        let w_basis = sym_basis(&system.table, &system.w_ids, weight)?;
        for mv in &v_basis {
            for mw in &w_basis {
                let mono = Monomial::merge_disjoint(mv, mw);
                blocks
                    .entry((mono.degree(), weight))
                    .or_default()
                    .push(mono);
            }
        }
    }

    let mut diff = BTreeMap::new();
    for (&(degree, weight), basis) in &blocks {
        let target_key = degree.checked_sub(1).map(|td| (td, weight + 1));
        let target = target_key.and_then(|key| blocks.get(&key));
        let rows = target.map_or(0, Vec::len);
        let index: HashMap<&Monomial, usize> = target
            .map(|t| t.iter().enumerate().map(|(r, m)| (m, r)).collect())
            .unwrap_or_default();
        let mut matrix = SparseRationalMatrix::new(rows, basis.len());
        for (col, mono) in basis.iter().enumerate() {
            let chain = system.extend_differential(mono)?;
            for (term, coef) in chain.iter() {
                let row = *index
                    .get(term)
                    .expect("differential image lies in the enumerated basis");
                matrix.set(row, col, coef.clone());
            }
        }
        diff.insert((degree, weight), matrix);
    }

    Ok(WeightGradedComplex {
        k,
        system,
        blocks,
        diff,
    })
}

impl WeightGradedComplex {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn system(&self) -> &GeneratorSystem {
        &self.system
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &[Monomial])> {
        self.blocks.iter().map(|(&key, b)| (key, b.as_slice()))
    }

    pub fn block(&self, degree: usize, weight: usize) -> Option<&[Monomial]> {
        self.blocks.get(&(degree, weight)).map(Vec::as_slice)
    }

    pub fn diff(&self, degree: usize, weight: usize) -> Option<&SparseRationalMatrix> {
        self.diff.get(&(degree, weight))
    }

    pub fn diffs(&self) -> impl Iterator<Item = ((usize, usize), &SparseRationalMatrix)> {
        self.diff.iter().map(|(&key, m)| (key, m))
    }

    /// Total chain dimension per degree, all weights aggregated.
    pub fn degree_dims(&self) -> BTreeMap<usize, usize> {
        let mut dims = BTreeMap::new();
        for (&(degree, _), basis) in &self.blocks {
            *dims.entry(degree).or_insert(0) += basis.len();
        }
        dims
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.blocks.keys().map(|&(degree, _)| degree).max()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// Alternating sum of chain dimensions. Equals the Euler characteristic
    /// of the homology for any finite complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.degree_dims()
            .iter()
            .map(|(&degree, &dim)| {
                let signed = dim as i64;
                if degree.is_multiple_of(2) {
                    signed
                } else {
                    -signed
                }
            })
            .sum()
    }

    /// Verifies `d^2 = 0` exactly on every pair of consecutive blocks.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&(degree, weight), first) in &self.diff {
            if degree == 0 {
                continue;
            }
            let Some(second) = self.diff.get(&(degree - 1, weight + 1)) else {
                continue;
            };
            let composite = second.multiply(first);
            if !composite.is_zero() {
                return Err(Error::InternalCheck(format!(
                    "d^2 != 0 on block (degree {degree}, weight {weight}) at k = {}",
                    self.k
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::catalog;
    use crate::rational::integer;

    fn names(system: &GeneratorSystem, ids: &[GenId]) -> Vec<String> {
        ids.iter().map(|&id| system.table.name(id)).collect()
    }

    fn chain_string(system: &GeneratorSystem, chain: &Chain) -> String {
        if chain.is_zero() {
            return "0".into();
        }
        chain
            .iter()
            .map(|(m, c)| format!("{}*{}", c, system.table.name(m.w_factors()[0])))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    #[test]
    fn sphere_generators() {
        let system = build_generators(&catalog("S2").unwrap()).unwrap();
        assert_eq!(names(&system, &system.v_ids), vec!["v0", "v2"]);
        assert_eq!(names(&system, &system.w_ids), vec!["w1", "w3"]);
        let v0 = system.table.get(system.v_ids[0]).unwrap();
        let v2 = system.table.get(system.v_ids[1]).unwrap();
        assert_eq!((v0.degree, v0.src_deg), (0, 2));
        assert_eq!((v2.degree, v2.src_deg), (2, 0));
    }

    #[test]
    fn plane_and_projective_plane_generators() {
        let system = build_generators(&catalog("R2").unwrap()).unwrap();
        assert_eq!(names(&system, &system.v_ids), vec!["v0"]);
        assert_eq!(names(&system, &system.w_ids), vec!["w1"]);

        let system = build_generators(&catalog("RP2").unwrap()).unwrap();
        assert_eq!(names(&system, &system.v_ids), vec!["v0"]);
        assert_eq!(names(&system, &system.w_ids), vec!["w3"]);
    }

    #[test]
    fn odd_dimension_is_rejected() {
        assert!(matches!(
            build_generators(&catalog("S3").unwrap()),
            Err(Error::OddDimension { d: 3 })
        ));
        assert!(matches!(
            build_complex(&catalog("S1").unwrap(), 2),
            Err(Error::OddDimension { d: 1 })
        ));
    }

    #[test]
    fn sphere_pair_differentials() {
        let system = build_generators(&catalog("S2").unwrap()).unwrap();
        let (v0, v2) = (system.v_ids[0], system.v_ids[1]);
        assert_eq!(
            chain_string(&system, &system.pair_differential(v0, v2).unwrap()),
            "1*w1"
        );
        assert!(system.pair_differential(v0, v0).unwrap().is_zero());
        assert_eq!(
            chain_string(&system, &system.pair_differential(v2, v2).unwrap()),
            "1*w3"
        );
        // Transposed call: both degrees even, no sign.
        assert_eq!(
            chain_string(&system, &system.pair_differential(v2, v0).unwrap()),
            "1*w1"
        );
    }

    #[test]
    fn punctured_torus_pair_differentials_are_antisymmetric() {
        let system = build_generators(&catalog("Sigma_1_1").unwrap()).unwrap();
        let (x, y) = (system.v_ids[1], system.v_ids[2]);
        // d(x ^ y) = (-1)^{(d-1)|y|} susp(alpha u beta) = -w1.
        assert_eq!(
            chain_string(&system, &system.pair_differential(x, y).unwrap()),
            "-1*w1"
        );
        assert_eq!(
            chain_string(&system, &system.pair_differential(y, x).unwrap()),
            "1*w1"
        );
        assert!(system.pair_differential(x, x).unwrap().is_zero());
    }

    #[test]
    fn sphere_coderivation_examples() {
        let m = catalog("S2").unwrap();
        let system = build_generators(&m).unwrap();
        let (v0, v2) = (system.v_ids[0], system.v_ids[1]);
        let w1 = system.w_ids[0];

        let (_, v2v2) = koszul_canonicalize(&system.table, &[v2, v2]).unwrap();
        let d = system.extend_differential(&v2v2).unwrap();
        assert_eq!(chain_string(&system, &d), "1*w3");

        let (_, m2) = koszul_canonicalize(&system.table, &[v0, v0, v2]).unwrap();
        let d = system.extend_differential(&m2).unwrap();
        assert_eq!(d.len(), 1);
        let (mono, coef) = d.iter().next().unwrap();
        assert_eq!(coef, &integer(2));
        assert_eq!(mono.v_factors(), &[v0]);
        assert_eq!(mono.w_factors(), &[w1]);

        let (_, w_mono) = koszul_canonicalize(&system.table, &[w1]).unwrap();
        assert!(system.extend_differential(&w_mono).unwrap().is_zero());
    }

    #[test]
    fn sphere_k2_complex_blocks_and_rank() {
        let m = catalog("S2").unwrap();
        let complex = build_complex(&m, 2).unwrap();
        let dims: Vec<((usize, usize), usize)> = complex
            .blocks()
            .map(|(key, basis)| (key, basis.len()))
            .collect();
        assert_eq!(
            dims,
            vec![
                ((0, 0), 1),
                ((1, 1), 1),
                ((2, 0), 1),
                ((3, 1), 1),
                ((4, 0), 1),
            ]
        );
        let total_rank: usize = complex.diffs().map(|(_, m)| m.rank()).sum();
        assert_eq!(total_rank, 2);
        complex.check_d_squared().unwrap();
    }

    #[test]
    fn plane_k3_complex_is_differential_free() {
        let m = catalog("R2").unwrap();
        let complex = build_complex(&m, 3).unwrap();
        let dims: Vec<((usize, usize), usize)> = complex
            .blocks()
            .map(|(key, basis)| (key, basis.len()))
            .collect();
        assert_eq!(dims, vec![((0, 0), 1), ((1, 1), 1)]);
        assert!(complex.diffs().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn k_zero_is_the_unit_block() {
        for name in ["S2", "R2", "Klein"] {
            let complex = build_complex(&catalog(name).unwrap(), 0).unwrap();
            assert_eq!(complex.total_dim(), 1);
            assert_eq!(complex.block(0, 0).unwrap(), &[Monomial::unit()]);
        }
    }

    #[test]
    fn quotient_complex_examples() {
        let complex = quotient_complex(&catalog("R2").unwrap(), 2).unwrap();
        let dims: Vec<((usize, usize), usize)> =
            complex.blocks().map(|(key, b)| (key, b.len())).collect();
        assert_eq!(dims, vec![((1, 1), 1)]);

        let complex = quotient_complex(&catalog("RP2").unwrap(), 2).unwrap();
        let dims: Vec<((usize, usize), usize)> =
            complex.blocks().map(|(key, b)| (key, b.len())).collect();
        assert_eq!(dims, vec![((3, 1), 1)]);

        assert!(matches!(
            quotient_complex(&catalog("S2").unwrap(), 2),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn quotient_bases_avoid_v0_and_are_closed_under_d() {
        let m = catalog("Sigma_1_1").unwrap();
        let complex = quotient_complex(&m, 4).unwrap();
        let v0 = complex.system().v0();
        for (_, basis) in complex.blocks() {
            for mono in basis {
                assert!(!mono.contains(v0));
            }
        }
        complex.check_d_squared().unwrap();
    }

    #[test]
    fn d_squared_vanishes_on_small_catalog_cases() {
        for name in ["S2", "T2", "Sigma2", "Sigma_1_1", "Klein", "RP2", "S4"] {
            let m = catalog(name).unwrap();
            for k in 0..=5 {
                build_complex(&m, k).unwrap().check_d_squared().unwrap();
            }
        }
    }

    #[test]
    fn differential_never_pairs_v0_when_hypothesis_holds() {
        // For hc_twisted[0] = 0 the top twisted class cups to zero with
        // everything, so d(v0 * x) keeps every v0 factor.
        for name in ["R2", "R4", "Sigma_1_1", "RP2", "Klein", "Mobius"] {
            let m = catalog(name).unwrap();
            let system = build_generators(&m).unwrap();
            let v0 = system.v0();
            for &b in system.v_ids() {
                assert!(
                    system.pair_differential(v0, b).unwrap().is_zero(),
                    "pairing v0 with {} on {name}",
                    system.table().name(b)
                );
            }
        }
    }
}
