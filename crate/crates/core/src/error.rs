use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{0}` as an exact rational (expected `p/q` or an integer)")]
    ParseRational(String),

    #[error("parameter {name} = {value} must be strictly positive")]
    NonPositiveParameter { name: char, value: String },

    #[error("parameter point {0} is not admissible (need 0 < a < b < c < d)")]
    NotAdmissible(String),

    #[error("series budgets differ: {left} vs {right}")]
    BudgetMismatch { left: u32, right: u32 },

    #[error("budget {got} is below the required minimum {required}")]
    InsufficientBudget { required: u32, got: u32 },

    #[error("vector {vector} is not a member of lattice {lattice}")]
    NotMember { lattice: String, vector: String },

    #[error("word {0} is not a nonzero element of C1")]
    NotInCode(String),

    #[error("word {word} maps into C2 under {count} group elements, expected exactly one")]
    AmbiguousMatch { word: String, count: usize },

    #[error("generator matrix is singular")]
    Singular,

    #[error("sample list is empty")]
    EmptySamples,

    #[error("certificate cross-check failed: {0}")]
    CertificateMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
