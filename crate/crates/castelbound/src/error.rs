use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands involve different radicands (sqrt({0}) vs sqrt({1}))")]
    MixedRadicals(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("wall is not a semicircle")]
    NotASemicircle,
    #[error("both classes are zero")]
    DegenerateClass,
    #[error("class has negative discriminant {0}")]
    NegativeDiscriminant(String),
    #[error("ch3 is unknown for this class")]
    UnknownCh3,
    #[error("tilt point needs a_sq > 0 (got {0}); use a boundary point for a_sq = 0")]
    InvalidTiltPoint(String),
    #[error("k = {k} exceeds -b_d for d = {d}, n = {n}")]
    KOutOfRange { k: i64, d: i64, n: i64 },
    #[error("expected b0 < 0, got {0}")]
    NonNegativeB0(String),
    #[error("target {0} has no epsilon table")]
    MissingTable(String),
    #[error("degree {d} is outside the certified range 1..={max}")]
    OutOfCertifiedRange { d: i64, max: i64 },
    #[error("rule {rule} at d = {d} needs axiom {axiom}")]
    MissingAxiom { rule: String, d: i64, axiom: String },
    #[error("n_H map has no entry for k = {0}")]
    IncompleteMap(i64),
    #[error("series at t-degree {d} has a nonzero residual after peeling GV invariants")]
    InconsistentSeries { d: i64 },
    #[error("q-window too narrow: {0}")]
    WindowTooNarrow(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("x = {x} exceeds the partition cap {cap}")]
    TooLarge { x: i64, cap: i64 },
    #[error("no threshold exists: {0}")]
    NoThreshold(String),
    #[error("entry outside table window: {0}")]
    OutsideWindow(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedRadicals(..) => "MixedRadicals",
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse { .. } => "Parse",
            Error::NotASemicircle => "NotASemicircle",
            Error::DegenerateClass => "DegenerateClass",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::UnknownCh3 => "UnknownCh3",
            Error::InvalidTiltPoint(_) => "InvalidTiltPoint",
            Error::KOutOfRange { .. } => "KOutOfRange",
            Error::NonNegativeB0(_) => "NonNegativeB0",
            Error::MissingTable(_) => "MissingTable",
            Error::OutOfCertifiedRange { .. } => "OutOfCertifiedRange",
            Error::MissingAxiom { .. } => "MissingAxiom",
            Error::IncompleteMap(_) => "IncompleteMap",
            Error::InconsistentSeries { .. } => "InconsistentSeries",
            Error::WindowTooNarrow(_) => "WindowTooNarrow",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::TooLarge { .. } => "TooLarge",
            Error::NoThreshold(_) => "NoThreshold",
            Error::OutsideWindow(_) => "OutsideWindow",
            Error::Config(_) => "Config",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Parse-type failures map to CLI exit code 2, everything else to 3.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
