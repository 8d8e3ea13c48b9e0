//! Error type shared by all modules.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while loading data, scoring, rating, or
/// correlating.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parallel file (system output, reference, or score file) does not
    /// have one line per source sentence.
    #[error("{path}: expected {expected} lines, found {found}")]
    LengthMismatch {
        path: String,
        expected: usize,
        found: usize,
    },

    /// The source file contains no sentences.
    #[error("{0}: no sentences found")]
    EmptyCorpus(String),

    /// The same system name appears twice in a manifest.
    #[error("duplicate system name {0:?}")]
    DuplicateSystemName(String),

    /// A system name is empty.
    #[error("system names must be nonempty")]
    EmptySystemName,

    /// No reference file provides a sentence at this position.
    #[error("sentence {sentence}: every reference file has an empty line here")]
    MissingReference { sentence: usize },

    /// A line that should hold a score is not a floating-point number.
    #[error("{path}:{line}: cannot parse {content:?} as a score")]
    ParseError {
        path: String,
        line: usize,
        content: String,
    },

    /// A score file contains NaN or an infinity.
    #[error("{system}: non-finite score at line {line}")]
    NonFiniteScore { system: String, line: usize },

    /// A comparison or ranking references a system that was never declared.
    #[error("unknown system {0:?}")]
    UnknownSystem(String),

    /// A reference-based metric was invoked without any reference.
    #[error("no reference sentences supplied")]
    NoReferences,

    /// A rating update produced a non-finite or out-of-range posterior.
    #[error("numerical instability in rating update {update}")]
    NumericalInstability { update: usize },

    /// Correlation input with zero variance.
    #[error("zero variance in {input} input")]
    ZeroVariance { input: &'static str },

    /// Correlation input with fewer than two paired values.
    #[error("need at least two paired values, got {0}")]
    TooFewValues(usize),

    /// Correlation inputs of different lengths.
    #[error("input lengths differ: {x} vs {y}")]
    UnequalLengths { x: usize, y: usize },

    /// Correlation input containing NaN or an infinity.
    #[error("non-finite value in {input} input")]
    NonFiniteInput { input: &'static str },

    /// A window larger than the number of systems.
    #[error("window {window} exceeds the number of systems ({systems})")]
    WindowTooLarge { window: usize, systems: usize },

    /// A window smaller than two systems.
    #[error("window must cover at least two systems, got {0}")]
    WindowTooSmall(usize),

    /// Fewer than two systems shared between a human ranking and a report.
    #[error("only {found} systems shared between human ranking and report; need at least 2")]
    InsufficientOverlap { found: usize },

    /// A configuration value outside its documented domain, or an invalid
    /// combination of options.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An I/O failure, annotated with the path involved. The cause is
    /// part of the message rather than the error chain so that chain
    /// printers do not repeat it.
    #[error("{path}: {cause}")]
    Io { path: String, cause: std::io::Error },

    /// A malformed JSON manifest or report.
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, cause: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            cause,
        }
    }

    pub(crate) fn malformed(path: impl Into<String>, message: impl ToString) -> Self {
        Error::Malformed {
            path: path.into(),
            message: message.to_string(),
        }
    }
}
