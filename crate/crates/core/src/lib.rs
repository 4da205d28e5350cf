//! Exact rational Betti numbers of unordered configuration spaces of manifolds.
//!
//! Given a finite cohomological presentation of a manifold `M` of dimension
//! `d` (compactly supported Betti numbers with ordinary and orientation-twisted
//! coefficients, plus cup-product structure constants), this crate computes
//! `dim H_i(C_k(M); Q)` for the unordered configuration spaces `C_k(M)`:
//!
//! * for even `d`, by assembling a weight-graded commutative complex on two
//!   suspended graded vector spaces `V` and `W` whose differential pairs
//!   `V`-generators through the cup product, and taking exact ranks of the
//!   sparse differential blocks over `Q`;
//! * for odd `d`, by counting a symmetric-power basis on `H_*(M; Q)`.
//!
//! On top of the Betti engine, [`analyze`] scans the dependence on the number
//! of points `k`: degreewise monotonicity, empirical stabilization, and the
//! splitting `b_i(C_k) = b_i(C_{k-1}) + dim H_i(quotient)` available whenever
//! `H_c^0(M; Q^w) = 0` (`M` non-compact or non-orientable).
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod analyze;
pub mod cecomplex;
mod error;
pub mod gradedalg;
pub mod homology;
pub mod manifold;
pub mod rational;

pub use error::{Error, Result, ValidationIssue};
pub use gradedalg::{koszul_canonicalize, sym_basis, SparseRationalMatrix};
pub use gradedalg::{Chain, GenId, GeneratorInfo, GeneratorTable, Monomial, Space};
pub use homology::BettiTable;
pub use manifold::{CupTable, ManifoldModel};
