use thiserror::Error;

/// Which precondition of the α/β family failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaBetaCondition {
    Alpha,
    Beta,
}

impl std::fmt::Display for AlphaBetaCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlphaBetaCondition::Alpha => f.write_str("alpha"),
            AlphaBetaCondition::Beta => f.write_str("beta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(&'static str),
    #[error("modulus {name} has degree {found}, expected {expected}")]
    DegreeMismatch {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("extension degree must be at least 2, got {0}")]
    NTooSmall(u32),
    #[error("field order does not fit in 64 bits")]
    FieldOrderOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("{divisor} does not divide the extension degree {n}")]
    NotADivisor { divisor: u32, n: u32 },
    #[error("index {index} out of range for a field with {order} elements")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("coefficient {value} out of range [0, {bound})")]
    CoefficientOutOfRange { value: u64, bound: u64 },
    #[error("invalid field specification: {0}")]
    InvalidFieldSpec(String),

    // linearized polynomials
    #[error("elements do not form a basis over the base field")]
    NotABasis,
    #[error("coefficients are not in the base field")]
    CoefficientsNotInBaseField,
    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    // NLP construction
    #[error("value set must be a proper nonzero subspace")]
    TrivialValueSet,
    #[error("relative trace of theta is nonzero")]
    TraceNotZero,
    #[error("theta must be nonzero")]
    ZeroTheta,
    #[error("the alpha/beta family needs an even extension degree")]
    OddExtension,
    #[error("alpha/beta condition violated: {0}")]
    ConditionViolated(AlphaBetaCondition),
    #[error("characteristic does not divide n; no base-field NLP exists")]
    PNotDividingN,
    #[error("deg r = {degree} exceeds the bound {bound}")]
    DegreeTooLarge { degree: usize, bound: i64 },
    #[error("r must be nonzero")]
    ZeroR,
    #[error("nilpotency target t must be at least 2, got {0}")]
    InvalidNilpotencyTarget(usize),
    #[error("polynomial is not nilpotent")]
    NotNilpotent,
    #[error("the zero polynomial is not an NLP")]
    ZeroPolynomial,

    // permutations
    #[error("k does not commute with L")]
    NotCommuting,
    #[error("k is not a permutation")]
    KNotPermutation,
    #[error("alpha and beta must be nonzero base-field elements")]
    AlphaBetaNotInBaseField,
    #[error("order search exceeded the budget of {0} steps")]
    OrderSearchExceeded(u64),
    #[error("map is not a permutation")]
    NotAPermutation,

    // cycles
    #[error("field with {order} elements exceeds the enumeration budget {budget}")]
    FieldTooLarge { order: u64, budget: u64 },
    #[error("expected a 2-NLP")]
    NotA2NLP,
    #[error("gamma must be a nonzero base-field element")]
    GammaNotInBaseFieldStar,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    // involutions and S-boxes
    #[error("construction requires characteristic 2")]
    NotChar2,
    #[error("shift must lie in the kernel and outside the image")]
    ShiftInKernelImage,
    #[error("table with {order} entries exceeds the export budget {budget}")]
    FieldTooLargeForTable { order: u64, budget: u64 },

    // text formats
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("malformed input: {0}")]
    InvalidFormat(String),
}

impl Error {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NOT_PRIME",
            Error::NotIrreducible(_) => "NOT_IRREDUCIBLE",
            Error::DegreeMismatch { .. } => "DEGREE_MISMATCH",
            Error::NTooSmall(_) => "N_TOO_SMALL",
            Error::FieldOrderOverflow => "FIELD_ORDER_OVERFLOW",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::CtxMismatch => "CTX_MISMATCH",
            Error::NotADivisor { .. } => "NOT_A_DIVISOR",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::CoefficientOutOfRange { .. } => "COEFFICIENT_OUT_OF_RANGE",
            Error::InvalidFieldSpec(_) => "INVALID_FIELD_SPEC",
            Error::NotABasis => "NOT_A_BASIS",
            Error::CoefficientsNotInBaseField => "COEFFICIENTS_NOT_IN_BASE_FIELD",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::TrivialValueSet => "TRIVIAL_VALUE_SET",
            Error::TraceNotZero => "TRACE_NOT_ZERO",
            Error::ZeroTheta => "ZERO_THETA",
            Error::OddExtension => "ODD_EXTENSION",
            Error::ConditionViolated(AlphaBetaCondition::Alpha) => "CONDITION_VIOLATED_ALPHA",
            Error::ConditionViolated(AlphaBetaCondition::Beta) => "CONDITION_VIOLATED_BETA",
            Error::PNotDividingN => "P_NOT_DIVIDING_N",
            Error::DegreeTooLarge { .. } => "DEGREE_TOO_LARGE",
            Error::ZeroR => "ZERO_R",
            Error::InvalidNilpotencyTarget(_) => "INVALID_NILPOTENCY_TARGET",
            Error::NotNilpotent => "NOT_NILPOTENT",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::NotCommuting => "NOT_COMMUTING",
            Error::KNotPermutation => "K_NOT_PERMUTATION",
            Error::AlphaBetaNotInBaseField => "ALPHA_BETA_NOT_IN_BASE_FIELD",
            Error::OrderSearchExceeded(_) => "ORDER_SEARCH_EXCEEDED",
            Error::NotAPermutation => "NOT_A_PERMUTATION",
            Error::FieldTooLarge { .. } => "FIELD_TOO_LARGE",
            Error::NotA2NLP => "NOT_A_2NLP",
            Error::GammaNotInBaseFieldStar => "GAMMA_NOT_IN_BASE_FIELD_STAR",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
            Error::NotChar2 => "NOT_CHAR2",
            Error::ShiftInKernelImage => "SHIFT_IN_KERNEL_IMAGE",
            Error::FieldTooLargeForTable { .. } => "FIELD_TOO_LARGE_FOR_TABLE",
            Error::InvalidFamily(_) => "INVALID_FAMILY",
            Error::InvalidFormat(_) => "INVALID_FORMAT",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
