use thiserror::Error;

use crate::arith::UniPoly;

/// How a failure should be reported to scripts driving the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The mathematics says no (e.g. an operator is not locally nilpotent).
    Negative,
    /// Malformed or inconsistent input.
    Input,
    /// An invariant guaranteed by theory failed; this is a bug.
    Internal,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Newton iteration exceeded {0} steps")]
    IterationBound(usize),
    #[error("operators do not commute")]
    NotCommuting,
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("operator is not invertible")]
    NotInvertible,
    #[error("structure constants are not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    BadUnit(usize),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("unsupported operator: {0}")]
    UnsupportedOperator(String),
    #[error("element is not a preimage: {0}")]
    NotPreimage(String),
    #[error("operator is not locally nilpotent (no vanishing power within {0} steps)")]
    NotLocallyNilpotent(usize),
    #[error("operator is not an E-derivation")]
    NotEDerivation,
    #[error("operator is not an algebra endomorphism")]
    NotEndomorphism,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("kernel projection left the kernel")]
    KernelCheckFailed,
    #[error("spectrum does not split over Q; offending factor {0}")]
    NotSplit(UniPoly),
    #[error("grading violated: {0}")]
    GradingViolation(String),
    #[error("structured image differs from the direct image")]
    StructureMismatch,
    #[error("unit orbit did not stabilize within {0} steps")]
    NoStabilization(usize),
    #[error("1 lies in the image but rank {rank} < dim {dim}")]
    RankMismatch { rank: usize, dim: usize },
    #[error("certificate construction failed its own check: {0}")]
    CertificateRejected(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown basis name '{0}'")]
    UnknownBasisName(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            IterationBound(_)
            | KernelCheckFailed
            | GradingViolation(_)
            | StructureMismatch
            | NoStabilization(_)
            | RankMismatch { .. }
            | CertificateRejected(_) => ErrorClass::Internal,
            NotCommuting
            | NotNilpotent
            | NotInvertible
            | NotAssociative(..)
            | BadUnit(_)
            | NotUnital
            | NotPreimage(_)
            | NotLocallyNilpotent(_)
            | NotEDerivation
            | NotEndomorphism
            | PreconditionFailed(_)
            | NotSplit(_) => ErrorClass::Negative,
            ZeroPolynomial
            | DimensionMismatch { .. }
            | NotSquare { .. }
            | AlgebraMismatch
            | DegreeCapExceeded { .. }
            | UnsupportedOperator(_)
            | Parse { .. }
            | UnknownBasisName(_)
            | Invalid(_) => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
