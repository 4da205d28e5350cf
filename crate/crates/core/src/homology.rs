//! Betti numbers of unordered configuration spaces.
//!
//! For even-dimensional manifolds the numbers come from the chain complex
//! of [`crate::cecomplex`]: in each degree `i`,
//!
//! ```text
//! b_i = dim(chains_i) - rank(d_i) - rank(d_{i+1}),
//! ```
//!
//! with ranks computed exactly over `Q`. Because the differential sends the
//! (degree, weight) block `(i, w)` into `(i-1, w+1)`, its matrix is block
//! diagonal across weights and the per-block ranks simply add up.
//!
//! Odd-dimensional manifolds never build a complex: there
//! `H_*(C_k(M); Q) = Sym^k(H_*(M; Q))`, so Betti numbers are counts of
//! length-`k` monomials on `H_*(M; Q)` (even homological degrees
//! polynomial, odd exterior), computed by a knapsack-style recurrence.

use rayon::prelude::*;

use crate::cecomplex::{build_complex, WeightGradedComplex};
use crate::error::{Error, Result};
use crate::manifold::ManifoldModel;

/// Homology dimensions of one configuration space `C_k(M)`.
///
/// `values[i] = dim H_i(C_k(M); Q)` with trailing zeros trimmed;
/// `top_degree` records the untrimmed top, the largest degree carrying any
/// chains at all (`None` for an empty complex, which only quotient
/// complexes can produce).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    k: usize,
    values: Vec<usize>,
    top_degree: Option<usize>,
}

impl BettiTable {
    pub(crate) fn new(k: usize, mut values: Vec<usize>, top_degree: Option<usize>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        BettiTable {
            k,
            values,
            top_degree,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The trimmed value vector, index = homological degree.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `dim H_i`, zero beyond the stored range.
    pub fn value(&self, degree: usize) -> usize {
        self.values.get(degree).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.top_degree
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(degree, &b)| {
                let signed = b as i64;
                if degree.is_multiple_of(2) {
                    signed
                } else {
                    -signed
                }
            })
            .sum()
    }
}

/// Betti numbers of `C_k(M)`, routing on the parity of `dim M`.
pub fn betti(m: &ManifoldModel, k: usize) -> Result<BettiTable> {
    if m.d() % 2 == 1 {
        betti_odd(m, k)
    } else {
        Ok(homology_of(&build_complex(m, k)?))
    }
}

/// Reads the homology dimensions off an assembled complex (full or
/// quotient). Ranks of distinct blocks are independent and computed in
/// parallel; the result does not depend on the schedule.
pub fn homology_of(complex: &WeightGradedComplex) -> BettiTable {
    let dims = complex.degree_dims();
    let blocks: Vec<((usize, usize), &crate::gradedalg::SparseRationalMatrix)> =
        complex.diffs().collect();
    let ranks: Vec<((usize, usize), usize)> = blocks
        .into_par_iter()
        .map(|(key, matrix)| (key, matrix.rank()))
        .collect();
    let mut rank_by_degree = std::collections::BTreeMap::new();
    for ((degree, _), rank) in ranks {
        *rank_by_degree.entry(degree).or_insert(0) += rank;
    }

    let top = complex.max_degree();
    let mut values = Vec::new();
    if let Some(top) = top {
        for degree in 0..=top {
            let dim = dims.get(&degree).copied().unwrap_or(0);
            let rank_out = rank_by_degree.get(&degree).copied().unwrap_or(0);
            let rank_in = rank_by_degree.get(&(degree + 1)).copied().unwrap_or(0);
            values.push(dim - rank_out - rank_in);
        }
    }
    BettiTable::new(complex.k(), values, top)
}

/// Betti numbers for odd `d` via the symmetric-power formula. The homology
/// dimensions of `M` itself are `hc_twisted[d-i]` by twisted duality, so no
/// extra input is needed.
pub fn betti_odd(m: &ManifoldModel, k: usize) -> Result<BettiTable> {
    let d = m.d();
    if d.is_multiple_of(2) {
        return Err(Error::EvenDimension { d });
    }
    let counts = sym_power_counts(&m.homology_dims(), k);
    let top = counts
        .iter()
        .rposition(|&c| c != 0)
        .expect("the degree-zero generator always yields a monomial");
    Ok(BettiTable::new(k, counts, Some(top)))
}

/// Number of length-`k` monomials per total degree on a graded generator
/// set with `dims[i]` generators in degree `i`: even degrees polynomial,
/// odd degrees exterior. Knapsack recurrence, exact in `u64`.
pub(crate) fn sym_power_counts(dims: &[usize], k: usize) -> Vec<usize> {
    let max_degree = (dims.len() - 1) * k;
    // dp[length][degree]
    let mut dp = vec![vec![0u64; max_degree + 1]; k + 1];
    dp[0][0] = 1;
    for (gen_degree, &count) in dims.iter().enumerate() {
        for _ in 0..count {
            if gen_degree % 2 == 1 {
                // exterior generator: at most one copy
                for length in (1..=k).rev() {
                    for degree in (gen_degree..=max_degree).rev() {
                        dp[length][degree] += dp[length - 1][degree - gen_degree];
                    }
                }
            } else {
                // polynomial generator: unbounded copies
                for length in 1..=k {
                    for degree in gen_degree..=max_degree {
                        dp[length][degree] += dp[length - 1][degree - gen_degree];
                    }
                }
            }
        }
    }
    dp[k].iter().map(|&c| c as usize).collect()
}

/// Euler characteristic of `C_k(M)`, with the chain-level cross-check for
/// even `d`: the alternating sums of Betti numbers and of chain dimensions
/// must agree exactly, otherwise rank computation or assembly is broken.
pub fn euler(m: &ManifoldModel, k: usize) -> Result<i64> {
    if m.d() % 2 == 1 {
        return Ok(betti_odd(m, k)?.euler_characteristic());
    }
    let complex = build_complex(m, k)?;
    let from_chains = complex.euler_characteristic();
    let from_homology = homology_of(&complex).euler_characteristic();
    if from_chains != from_homology {
        return Err(Error::InternalCheck(format!(
            "Euler characteristics disagree on {} at k = {k}: \
             chain level {from_chains}, homology level {from_homology}",
            m.name()
        )));
    }
    Ok(from_homology)
}
