use thiserror::Error;

/// Failures of truncated l-adic arithmetic. `NotDivisible` is a detection
/// mechanism, not a crash: several checks exist precisely to certify that a
/// division is exact, and report this error as a finding when it is not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("value not divisible by l^{requested} (coefficient at index {index} has valuation {valuation})")]
    NotDivisible {
        requested: u32,
        valuation: u32,
        index: usize,
    },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("no l-power of the unit is congruent to 1 mod l within bound {bound}")]
    NoConvergence { bound: u32 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("scalar {0} is not a unit mod l")]
    BadUnit(u64),
    #[error("operation leaves the modelled ring: {0}")]
    OutOfModel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("group order exceeds the configured cap of {cap}")]
    SizeCap { cap: usize },
    #[error("unknown catalog group `{0}`")]
    UnknownName(String),
    #[error("element {0} is not in the marked subgroup")]
    NotInSubgroup(usize),
    #[error("character table incomplete: sum of squared degrees {got} != group order {want}")]
    IncompleteTable { got: usize, want: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("bad configuration: {0}")]
    ConfigError(String),
    #[error("group too large for the suite cap: order {order}")]
    GroupTooLarge { order: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("io: {0}")]
    Io(String),
}
