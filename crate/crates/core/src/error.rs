use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {0} is too large (fewer than 256 elements)")]
    FieldTooLarge(u64),
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("elements are linearly dependent over the prime field")]
    DependentBasis,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("relation is not a partial order: {0}")]
    NotPoset(String),
    #[error("the {0} family has no dual family")]
    NoDualFamily(&'static str),
    #[error("the {0} family cannot be enumerated by dimension")]
    NotEnumerable(&'static str),
    #[error("anticode does not belong to the {0} family")]
    FamilyMismatch(&'static str),
    #[error("budget exhausted while enumerating {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },
    #[error("{what} undecided at budget: lower bound {lower}, upper bound {upper}")]
    Undecided {
        what: &'static str,
        lower: usize,
        upper: usize,
    },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("document does not match the tencode/1 schema: {0}")]
    Schema(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrimePower(_) | Error::NotPrime(_) | Error::FieldTooLarge(_) => "bad_field",
            Error::BadModulus { .. } | Error::ReducibleModulus(_) => "bad_modulus",
            Error::MixedFields => "mixed_fields",
            Error::ZeroInverse => "zero_inverse",
            Error::DependentBasis => "dependent_basis",
            Error::Shape(_) => "shape_mismatch",
            Error::Invalid(_) => "invalid_argument",
            Error::NotPoset(_) => "not_a_poset",
            Error::NoDualFamily(_) => "no_dual_family",
            Error::NotEnumerable(_) => "not_enumerable",
            Error::FamilyMismatch(_) => "family_mismatch",
            Error::Budget { .. } => "budget_exceeded",
            Error::Undecided { .. } => "undecided",
            Error::Json { .. } => "malformed_json",
            Error::Schema(_) => "schema_mismatch",
            Error::Inconsistent(_) => "inconsistent",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Undecided { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
