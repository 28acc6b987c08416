use thiserror::Error;

/// Largest exponent accepted anywhere in the crate.
pub const MAX_EXPONENT: u32 = 1 << 31;

/// Everything that can go wrong in the engine, grouped so each variant maps
/// onto one process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: exponent of `{var}` is zero")]
    ZeroExponent {
        line: usize,
        column: usize,
        var: String,
    },
    #[error("exponent {value} exceeds the maximum of {max}")]
    ExponentTooLarge { value: u64, max: u32 },
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("the unit monomial cannot be a generator")]
    UnitGenerator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable table: {0}")]
    InvalidVariables(String),
    #[error("monomials belong to different variable tables")]
    MismatchedRings,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resolution too large: {generators} generators exceeds the cap of {max}")]
    ResolutionTooLarge { generators: usize, max: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::ZeroExponent { .. }
            | Error::ExponentTooLarge { .. }
            | Error::EmptyIdeal
            | Error::UnitGenerator
            | Error::UnknownVariable(_)
            | Error::InvalidVariables(_)
            | Error::MismatchedRings
            | Error::NotDivisible { .. }
            | Error::InvalidArgument(_) => 1,
            Error::Hypothesis(_) => 2,
            Error::Unsupported(_) => 3,
            Error::ResolutionTooLarge { .. } | Error::ResourceCap(_) => 4,
            Error::Internal(_) => 5,
        }
    }

    /// Stable short name used in result documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::ZeroExponent { .. } => "zero_exponent",
            Error::ExponentTooLarge { .. } => "exponent_too_large",
            Error::EmptyIdeal => "empty_ideal",
            Error::UnitGenerator => "unit_generator",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::InvalidVariables(_) => "invalid_variables",
            Error::MismatchedRings => "mismatched_rings",
            Error::NotDivisible { .. } => "not_divisible",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Hypothesis(_) => "hypothesis",
            Error::Unsupported(_) => "unsupported",
            Error::ResolutionTooLarge { .. } => "resolution_too_large",
            Error::ResourceCap(_) => "resource_cap",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn hypothesis<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Hypothesis(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
