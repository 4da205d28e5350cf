use thiserror::Error;

use crate::gradedalg::GenId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator id {0:?}")]
    UnknownGenerator(GenId),

    #[error("invalid manifold data:{}", issues_block(.0))]
    Validation(Vec<ValidationIssue>),

    #[error("unknown catalog manifold \"{0}\"")]
    UnknownCatalog(String),

    #[error("the chain-complex route requires even dimension, got d = {d}")]
    OddDimension { d: usize },

    #[error("the symmetric-power route requires odd dimension, got d = {d}")]
    EvenDimension { d: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
}

fn issues_block(issues: &[ValidationIssue]) -> String {
    issues.iter().map(|i| format!("\n  - {i}")).collect()
}

/// A single rule violation found while validating manifold input data.
///
/// Validation reports all violations at once rather than stopping at the
/// first, so hand-written input files can be fixed in one pass.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationIssue {
    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("{which} must have length d+1 = {expected}, got {got}")]
    ArrayLength {
        which: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("connectedness requires hc_twisted[d] = 1, got {got}")]
    Connectedness { got: usize },

    #[error(
        "orientable manifold must have hc_twisted = hc_untwisted, they differ in degree {degree}"
    )]
    OrientabilityMismatch { degree: usize },

    #[error(
        "closed flag is {closed} but hc_untwisted[0] = {hc0} (closed iff hc_untwisted[0] = 1)"
    )]
    ClosednessFlag { closed: bool, hc0: usize },

    #[error("hc_twisted[0] must be {expected} for this closed/orientable combination, got {got}")]
    TwistedDegreeZero { expected: usize, got: usize },

    #[error("cup entry ({i},{a})x({j},{b}) lands above the top degree d")]
    CupAboveTopDegree {
        i: usize,
        a: usize,
        j: usize,
        b: usize,
    },

    #[error("cup entry degree pair ({i},{j}) outside 0..=d")]
    CupDegreeOutOfRange { i: usize, j: usize },

    #[error(
        "cup entry ({i},{a})x({j},{b}): coefficient \"{text}\" is not a rational \"p\" or \"p/q\""
    )]
    BadCoefficient {
        i: usize,
        a: usize,
        j: usize,
        b: usize,
        text: String,
    },

    #[error("cup entry ({i},{a})x({j},{b}) -> index {c}: {side} index out of range")]
    CupIndexOutOfRange {
        i: usize,
        a: usize,
        j: usize,
        b: usize,
        c: usize,
        side: &'static str,
    },

    #[error("cup entries for ({i},{a})x({j},{b}) and its transpose violate graded commutativity")]
    CupCommutativity {
        i: usize,
        a: usize,
        j: usize,
        b: usize,
    },

    #[error("duplicate cup entry for ({i},{a})x({j},{b})")]
    CupDuplicate {
        i: usize,
        a: usize,
        j: usize,
        b: usize,
    },
}
