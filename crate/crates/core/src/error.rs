//! Error type shared across the crate.

use thiserror::Error;

use crate::shape::CurveClosure;

/// Errors produced by curve construction, transforms, registration and IO.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time grid is not strictly increasing at node {index}")]
    GridNotIncreasing { index: usize },

    #[error("grid has {times} nodes but {samples} samples were given")]
    LengthMismatch { times: usize, samples: usize },

    #[error("sample {index} is not on the {space} manifold (deviation {deviation:.3e})")]
    NotOnManifold {
        index: usize,
        space: &'static str,
        deviation: f64,
    },

    #[error("segment {index} is degenerate (consecutive samples coincide)")]
    DegenerateSegment { index: usize },

    #[error("segment {index} joins antipodal sphere points (undefined rotation plane)")]
    AntipodalSegment { index: usize },

    #[error("start points are antipodal; no canonical aligning rotation exists")]
    AntipodalStartPoints,

    #[error("parameter {t} outside curve domain [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },

    #[error("rotation angle {angle:.9} is within {margin:.1e} of pi; logarithm axis is ill-conditioned (refine the curve grid)")]
    AngleNearPi { angle: f64, margin: f64 },

    #[error("matrix is not skew-symmetric (asymmetry {asymmetry:.3e} exceeds 1e-12)")]
    NotSkew { asymmetry: f64 },

    #[error("signals/curves live on different grids; resample onto a common grid first")]
    GridMismatch,

    #[error("operation requires a uniform grid; resample first")]
    NonUniformGrid,

    #[error("slope set is empty")]
    EmptySlopeSet,

    #[error(
        "slope step ({di}, {dj}) has a zero component; lattice steps must advance in both indices"
    )]
    InvalidSlope { di: usize, dj: usize },

    #[error("no monotone lattice path reaches the final node with the given slope set")]
    NoAdmissiblePath,

    #[error("signal value {index} vanishes (norm {norm:.3e}); codomain excludes zero")]
    ZeroSignalSegment { index: usize, norm: f64 },

    #[error("expected a curve in {expected}, found {found}")]
    SpaceMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("initial frame's first column is not aligned with the curve start point (deviation {deviation:.3e})")]
    FrameMismatch { deviation: f64 },

    #[error("interpolation weight {theta} outside [0, 1]")]
    ThetaOutOfRange { theta: f64 },

    #[error("curve closing did not reach tolerance after {iterations} iterations (gap {gap:.3e}); best iterate attached")]
    NoConvergence {
        iterations: usize,
        gap: f64,
        best: Box<CurveClosure>,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Rewrites the position carried by indexed variants; used by curve
    /// and signal constructors to report where in a sequence a pointwise
    /// check failed.
    pub(crate) fn at_segment(self, index: usize) -> Self {
        match self {
            Error::NotOnManifold {
                space, deviation, ..
            } => Error::NotOnManifold {
                index,
                space,
                deviation,
            },
            Error::DegenerateSegment { .. } => Error::DegenerateSegment { index },
            Error::AntipodalSegment { .. } => Error::AntipodalSegment { index },
            Error::ZeroSignalSegment { norm, .. } => Error::ZeroSignalSegment { index, norm },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
