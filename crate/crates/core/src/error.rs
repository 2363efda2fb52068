use std::path::PathBuf;

use thiserror::Error;

use crate::curve::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Each variant maps to a stable identifier through [`Error::code`], which the
/// CLI prints alongside the message.
#[derive(Debug, Error)]
pub enum Error {
    // curve construction and alignment
    #[error("invalid curve: {}", join_violations(.0))]
    InvalidCurve(Vec<Violation>),
    #[error("target grid point {frequency} Hz lies outside the source range [{min}, {max}] Hz")]
    TargetOutOfRange { frequency: f64, min: f64, max: f64 },
    #[error("target grid must be strictly increasing")]
    InvalidTargetGrid,
    #[error("frequency ranges of the family members do not overlap on at least two reference points")]
    NoOverlap,
    #[error("curve family has no cases")]
    EmptyFamily,
    #[error("severity {0} appears more than once")]
    DuplicateSeverity(f64),
    #[error("severity {0} must be positive and finite")]
    InvalidSeverity(f64),

    // index evaluation
    #[error("array is empty")]
    EmptyArray,
    #[error("arrays differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("two-array indices need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("value {value} at position {position} must be positive")]
    NonPositiveValue { position: usize, value: f64 },
    #[error("mean is zero")]
    ZeroMean,
    #[error("array is constant")]
    ConstantArray,
    #[error("zero magnitude at position {0}")]
    ZeroMagnitude(usize),
    #[error("reference value is zero at position {0}")]
    ZeroReferenceValue(usize),
    #[error("midpoint of the two curves is zero at position {0}")]
    ZeroMidpoint(usize),
    #[error("integral of the reference curve is zero")]
    ZeroReferenceIntegral,
    #[error("compared curve has zero range")]
    ZeroRange,

    // assessment
    #[error("{index}: largest deviation from the reference is not positive, nothing to normalize against")]
    DegenerateNormalization { index: &'static str },
    #[error("{index} does not have the orientation this normalization expects")]
    WrongOrientation { index: &'static str },
    #[error("change percentage baseline is zero")]
    ZeroBaseline,
    #[error("sensitivity needs at least three fault levels, got {0}")]
    InsufficientLevels(usize),
    #[error("unknown index abbreviation `{0}`")]
    UnknownIndex(String),

    // synthesis
    #[error("invalid ladder configuration: {0}")]
    InvalidConfig(String),
    #[error("frequency {0} Hz must be positive and finite")]
    InvalidFrequency(f64),
    #[error("shorted fraction {0} must lie in [0, 1)")]
    InvalidFault(f64),
    #[error("no severities requested")]
    EmptySeverities,

    // files
    #[error("line {line}: expected header `frequency_hz,magnitude[,phase_deg]`")]
    MalformedHeader { line: u64 },
    #[error("line {line}: {message}")]
    BadNumber { line: u64, message: String },
    #[error("line {line}: frequency does not increase")]
    NonAscendingFrequency { line: u64 },
    #[error("sweep needs at least two data rows, got {0}")]
    TooFewRows(usize),
    #[error("no profiles to plot")]
    EmptyProfiles,
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{}: {source}", .path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable identifier for the failure, independent of the message text.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidCurve(_) => "InvalidCurve",
            Error::TargetOutOfRange { .. } => "TargetOutOfRange",
            Error::InvalidTargetGrid => "InvalidTargetGrid",
            Error::NoOverlap => "NoOverlap",
            Error::EmptyFamily => "EmptyFamily",
            Error::DuplicateSeverity(_) => "DuplicateSeverity",
            Error::InvalidSeverity(_) => "InvalidSeverity",
            Error::EmptyArray => "EmptyArray",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooFewPoints(_) => "TooFewPoints",
            Error::NonPositiveValue { .. } => "NonPositiveValue",
            Error::ZeroMean => "ZeroMean",
            Error::ConstantArray => "ConstantArray",
            Error::ZeroMagnitude(_) => "ZeroMagnitude",
            Error::ZeroReferenceValue(_) => "ZeroReferenceValue",
            Error::ZeroMidpoint(_) => "ZeroMidpoint",
            Error::ZeroReferenceIntegral => "ZeroReferenceIntegral",
            Error::ZeroRange => "ZeroRange",
            Error::DegenerateNormalization { .. } => "DegenerateNormalization",
            Error::WrongOrientation { .. } => "WrongOrientation",
            Error::ZeroBaseline => "ZeroBaseline",
            Error::InsufficientLevels(_) => "InsufficientLevels",
            Error::UnknownIndex(_) => "UnknownIndex",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidFrequency(_) => "InvalidFrequency",
            Error::InvalidFault(_) => "InvalidFault",
            Error::EmptySeverities => "EmptySeverities",
            Error::MalformedHeader { .. } => "MalformedHeader",
            Error::BadNumber { .. } => "BadNumber",
            Error::NonAscendingFrequency { .. } => "NonAscendingFrequency",
            Error::TooFewRows(_) => "TooFewRows",
            Error::EmptyProfiles => "EmptyProfiles",
            Error::Manifest(_) => "Manifest",
            Error::InFile { source, .. } => source.code(),
            Error::Io { .. } => "Io",
            Error::Csv(_) => "Csv",
        }
    }

    /// Strips file context, returning the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Error {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
