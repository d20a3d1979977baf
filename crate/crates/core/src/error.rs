use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field size {0} exceeds the supported maximum of 512")]
    UnsupportedSize(u64),
    #[error("value {value} is not an element of a field with {q} elements")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("truncation cutoff {0} is negative")]
    NegativeCutoff(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),
    #[error("bound k = {k} is smaller than the determinant degree t = {t}")]
    BoundTooSmall { k: u32, t: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("enumeration cost {cost} exceeds the budget of {max_items} items")]
    BudgetExceeded { cost: String, max_items: u64 },
    #[error("representative matrix is singular")]
    SingularRepresentative,
    #[error("matrix is not upper triangular")]
    NotTriangular,
    #[error("index {0} is out of range for this operation")]
    BadIndex(usize),
    #[error("diagonal entry degree is too small for the move")]
    DegreeTooSmall,
    #[error("pivot entry is zero")]
    ZeroPivot,
    #[error("conjugator has non-constant entries")]
    NotConstant,
    #[error("conjugator is singular")]
    SingularConjugator,
    #[error("determinant must be positive")]
    NonPositiveDeterminant,
    #[error("dimension {0} is not supported")]
    UnsupportedDimension(usize),
    #[error("no value configured for zeta({0})")]
    MissingZetaValue(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
