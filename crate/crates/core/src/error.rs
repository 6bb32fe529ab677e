use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected a polynomial, got `{0}`")]
    NotPolynomial(String),

    #[error("denominator vanishes at the given point")]
    DenominatorVanishes,

    #[error("point does not assign variable `{0}`")]
    MissingPointValue(String),

    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),

    #[error("values live over different variable sets")]
    VarSetMismatch,

    #[error("derivation is not certified locally nilpotent (cap {cap})")]
    Uncertified { cap: usize },

    #[error("not unipotent within cap {cap} (generator `{var}`)")]
    NotUnipotent { var: String, cap: usize },

    #[error("not unitriangular: {0}")]
    NotUnitriangular(String),

    #[error("automorphisms are not mutually inverse")]
    NotInverse,

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("no slice found for generator {index} up to degree cap {cap}")]
    SliceSearchExhausted { index: usize, cap: usize },

    #[error("denominator of {0} is not annihilated by the family")]
    DenominatorNotInvariant(String),

    #[error("basis is not closed under brackets: {0}")]
    NotBracketClosed(String),

    #[error("rank {found} is below the requested rank {requested}")]
    RankDeficient { requested: usize, found: usize },

    #[error("commuting reduction exceeded {cap} substitutions; surviving pair ({}, {})", .pair.0, .pair.1)]
    ReductionCapExceeded { cap: usize, pair: (usize, usize) },

    #[error("commuting reduction stuck on pair ({i}, {j}): no substitution keeps the rank")]
    ReductionStuck { i: usize, j: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal verification failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures caused by an iteration or search cap running out.
    pub fn is_cap_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::Uncertified { .. }
                | Error::NotUnipotent { .. }
                | Error::SliceSearchExhausted { .. }
                | Error::ReductionCapExceeded { .. }
        )
    }
}
