use alloc::string::String;

/// Errors raised by the exact and numeric engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range for {n} indices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),

    #[error("matrix is not skew-symmetrizable: entries ({i},{j}) and ({j},{i}) are incompatible")]
    NotSkewSymmetrizable { i: usize, j: usize },

    #[error("quiver has a loop at vertex {0}")]
    QuiverLoop(usize),

    #[error("quiver has a 2-cycle between {0} and {1}")]
    QuiverTwoCycle(usize, usize),

    #[error("polynomial exceeded the term cap of {cap} (use principal-coefficient tracking instead)")]
    SizeCapExceeded { cap: usize },

    #[error("F-polynomial recursion produced a non-exact division at index {0}")]
    InexactDivision(usize),

    #[error("invariant violated after mutation: {0}")]
    InvariantViolation(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("slice condition violated at stage {stage}: b({a},{b}) != 0")]
    SliceCondition { stage: usize, a: usize, b: usize },

    #[error("sequence is not a matrix period for the given relabeling")]
    NotMatrixPeriod,

    #[error("sequence is not a seed period for the given relabeling")]
    NotSeedPeriod,

    #[error("mixed-sign c-vector at index {index}, stage {stage}")]
    MixedSign { index: usize, stage: i64 },

    #[error("numeric value outside domain: {0}")]
    Domain(String),

    #[error("numeric overflow while propagating values")]
    Overflow,

    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = core::result::Result<T, Error>;
