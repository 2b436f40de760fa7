use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a groupoid needs at least one element")]
    EmptyCarrier,
    #[error("order {order} exceeds the limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("out-of-range entry at ({row},{col})")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("expected {expected} element names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown {what} {name:?}")]
    UnknownName { what: &'static str, name: String },
    #[error("grade {0} is outside [0,1]")]
    GradeOutOfRange(String),
    #[error("cannot parse grade {0:?}")]
    BadGrade(String),
    #[error("k must lie in [0,1), got {0}")]
    BadK(String),
    #[error("level sets need t in (0,1], got {0}")]
    NonPositiveLevel(String),
    #[error("fuzzy subsets live on carriers of different sizes ({0} vs {1})")]
    MismatchedCarrier(usize, usize),
    #[error("{0} is not supported by this check")]
    UnsupportedKind(&'static str),
    #[error("{0} cannot be used as a hypothesis relation")]
    BadHypothesisRelation(&'static str),
    #[error("too many critical thresholds ({0}); carrier too large for the quantifier check")]
    TooManyThresholds(usize),
    #[error("grade grid must be strictly increasing and contain 0 and 1")]
    BadGrid,
    #[error("enumeration needs {needed} subsets, over the budget of {budget}; use sampling")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("order {0} requires the long-running flag")]
    NeedsLongRunning(usize),
    #[error("catalog line {line}: {msg}")]
    CatalogFormat { line: usize, msg: String },
    #[error("catalog checksum mismatch: header promised {expected} entries, found {found}")]
    ChecksumMismatch { expected: usize, found: usize },
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
