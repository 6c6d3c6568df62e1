use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    /// The metric tensor diag(α, β, αβ) is singular.
    #[error("signature ({alpha}, {beta}) is degenerate: alpha*beta = 0")]
    DegenerateSignature { alpha: f64, beta: f64 },

    /// Zero divisor or the zero quaternion.
    #[error("quaternion is not invertible: norm = {norm}")]
    NonInvertible { norm: f64 },

    #[error("quaternion norm must be positive, got {norm}")]
    NonPositiveNorm { norm: f64 },

    #[error("expected a unit quaternion, norm = {norm}")]
    NotUnit { norm: f64 },

    /// The vector part is a nonzero null vector (parabolic case).
    #[error("vector part is a nonzero null vector (inner square {inner})")]
    NullVectorPart { inner: f64 },

    /// Unit quaternion with negative vector square and a0 <= -1.
    #[error("hyperbolic quaternion with negative scalar part {scalar} has no cosh/sinh polar form")]
    NegativeHyperbolicScalar { scalar: f64 },

    #[error("axis inner square {inner} deviates from {expected}")]
    InvalidAxis { inner: f64, expected: f64 },

    #[error("{kind} angle {angle} outside its admissible range")]
    InvalidAngle { kind: &'static str, angle: f64 },

    #[error("{kind} form is not supported for signature ({alpha}, {beta})")]
    UnsupportedSignature { kind: &'static str, alpha: f64, beta: f64 },
}

impl Error {
    /// Stable identifier used in machine-readable error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::DegenerateSignature { .. } => "DegenerateSignature",
            Error::NonInvertible { .. } => "NonInvertible",
            Error::NonPositiveNorm { .. } => "NonPositiveNorm",
            Error::NotUnit { .. } => "NotUnit",
            Error::NullVectorPart { .. } => "NullVectorPart",
            Error::NegativeHyperbolicScalar { .. } => "NegativeHyperbolicScalar",
            Error::InvalidAxis { .. } => "InvalidAxis",
            Error::InvalidAngle { .. } => "InvalidAngle",
            Error::UnsupportedSignature { .. } => "UnsupportedSignature",
        }
    }
}
