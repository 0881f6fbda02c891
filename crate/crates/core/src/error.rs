use thiserror::Error;

use crate::plane::Point2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input failed a structural check (orientation, symmetry, finiteness, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A vector that had to be nonzero has gauge below the scene tolerance.
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("vectors are linearly dependent")]
    Dependent,

    /// The half-planes do not positively span the plane.
    #[error("insufficient directions: half-plane intersection is unbounded")]
    InsufficientDirections,

    #[error("half-plane intersection is empty")]
    Empty,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("strict convexity required (polygonal backend given)")]
    StrictConvexityRequired,

    #[error("operation requires a polygon backend")]
    PolygonRequired,

    #[error("ratio undefined: normality asymmetry is zero")]
    RatioUndefined,

    #[error("triangle is not anti-equilateral (side spread {spread:e})")]
    NotAntiEquilateral { spread: f64 },

    #[error("straight angle has no unique bisector")]
    StraightAngle,

    #[error("regular {0}-gon is not a Radon polygon (need k = 2 mod 4, k >= 6)")]
    NotRadonGon(usize),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        best: Vec<Point2>,
    },
}
