use thiserror::Error;

/// Errors surfaced by the exact and numeric kernels.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("expansion region incompatible with {0}")]
    RegionIncompatible(String),
    #[error("requested window [{lo}, {hi}] exceeds the reliable window [{have_lo}, {have_hi}]")]
    WindowExceeded { lo: i64, hi: i64, have_lo: i64, have_hi: i64 },
    #[error("series has a nonzero constant term; exact exponential undefined")]
    NonzeroConstantTerm,
    #[error("series edge coefficient is not an invertible constant")]
    NonUnitEdge,
    #[error("coefficient at power {0} lies outside the reliable window")]
    PowerOutsideWindow(i64),
    #[error("mode {mode} is not admissible for family {family}")]
    ModeOutsideFamily { family: String, mode: i64 },
    #[error("weight {0} leaves the configured weight window")]
    WeightOutsideWindow(i64),
    #[error("cutoffs too small: no trusted entries for {0}")]
    NoTrustedEntries(String),
    #[error("argument within {eps} of a pole of {what}")]
    PoleProximity { what: String, eps: f64 },
    #[error("operand is not exactly divisible by {0}")]
    NotDivisible(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("unresolvable dump selector {0:?}")]
    Selector(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
