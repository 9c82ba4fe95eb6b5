use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the operators built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("zero input")]
    ZeroInput,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("valuation {0} is below the supported bound")]
    OrdOutOfRange(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not an embedding: {0}")]
    NonEmbedding(String),
    #[error("component has a non-polynomial polar tail")]
    NonPolynomialTail,
    #[error("character is unramified")]
    UnramifiedCharacter,
    #[error("character is not in reduced form")]
    NotReduced,
    #[error("form degree exceeds the number of tower variables")]
    DegreeOverflow,
    #[error("form is not of top degree")]
    NotTopDegree,
    #[error("coefficient has no p-th root")]
    NoPthRoot,
    #[error("window of width {width} is too wide for b = {b}")]
    WindowTooWide { width: i64, b: u32 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("inconsistent value: {0}")]
    InconsistentValue(String),
    #[error("argument of the truncated exponential must have positive valuation")]
    NotTopological,
    #[error("base field must have a perfect residue field")]
    NonPerfectBase,
    #[error("symbol entry is zero")]
    ZeroEntry,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
