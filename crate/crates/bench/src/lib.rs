//! Shared fixtures for the benchmark targets.

use confspace::rational::integer;
use confspace::SparseRationalMatrix;

/// Deterministic pseudo-random sparse matrix with small integer entries,
/// shaped like the differential blocks the engine produces.
pub fn random_sparse(
    rows: usize,
    cols: usize,
    fill_per_col: usize,
    seed: u64,
) -> SparseRationalMatrix {
    let mut state = seed | 1;
    let mut next = move || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state.wrapping_mul(0x2545_F491_4F6C_DD1D)
    };
    let mut m = SparseRationalMatrix::new(rows, cols);
    for col in 0..cols {
        for _ in 0..fill_per_col {
            let row = (next() % rows as u64) as usize;
            let value = (next() % 19) as i64 - 9;
            m.add(row, col, integer(value));
        }
    }
    m
}
