use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong while building or checking a system.
///
/// Precondition failures of the theorems (not an m-cover, redundant class,
/// modulus not a period, ...) each get their own variant so callers can tell
/// a violated hypothesis apart from a violated conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("no moduli")]
    NoModuli,
    #[error("invalid modulus {0}: moduli must be positive")]
    InvalidModulus(i128),
    #[error("period too large: lcm of moduli is {lcm}, cap is {cap}")]
    PeriodTooLarge { lcm: BigUint, cap: u64 },
    #[error("too many classes: {count} exceeds the enumeration cap {cap}")]
    TooManyClasses { count: usize, cap: usize },
    #[error("lcm of moduli is too large for exact enumeration")]
    ScaleOverflow,
    #[error("class index {index} out of range 1..={len}")]
    BadIndex { index: usize, len: usize },
    #[error("not an m-cover: multiplicity is {actual}, need {required}")]
    NotMCover { required: u32, actual: u32 },
    #[error("not an exact {m}-cover")]
    NotExactCover { m: u32 },
    #[error("class {index} is redundant in the {m}-cover")]
    RedundantClass { index: usize, m: u32 },
    #[error("modulus {modulus} is not a period (minimal period is {minimal_period})")]
    NotAPeriod { modulus: u64, minimal_period: u64 },
    #[error("minimum-not-unique: value {value} attained at {count} residues mod {period}")]
    MinimumNotUnique { value: u32, count: usize, period: u64 },
    #[error("|D| = {got} but the covering multiplicity is {expected}")]
    ExcludedSetSize { got: usize, expected: u32 },
    #[error("degree-exceeds-multiplicity: deg f = {degree}, m(A) = {multiplicity}")]
    DegreeExceedsMultiplicity { degree: u32, multiplicity: u32 },
    #[error("{z} is not in class {index}")]
    NotInClass { z: i64, index: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vanishing factor raised to exponent {exponent} at j = {j}")]
    VanishingFactor { j: u64, exponent: i64 },
    #[error("search space of {size} assignments exceeds the cap {cap}")]
    SearchTooLarge { size: BigUint, cap: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CoverError>;
