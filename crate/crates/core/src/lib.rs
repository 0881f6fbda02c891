//! Minkowski planes with a fixed area form.
//!
//! A two-dimensional normed plane carries, besides its norm, the area form
//! `[x, y] = x1*y2 - x2*y1`. Pairing the dual norm with this form gives the
//! antinorm, whose unit ball is the isoperimetrix. This crate computes both
//! for polygonal and analytic unit balls and builds on them: Birkhoff
//! normality, Radon curves, triangle geometry, isoperimetric inequalities,
//! projections and d-convexity.

pub mod dconvex;
pub mod error;
pub mod isoperimetry;
pub mod lp;
pub mod norms;
pub mod optim;
pub mod plane;
pub mod projections;
pub mod radon;
pub mod sampling;
pub mod triangle;

pub use error::{Error, Result};
pub use norms::{Metric, NormSpec};
pub use plane::{symp, ConvexPolygon, Functional, HalfPlane, Point2, SymmetricPolygon};
pub use triangle::Triangle;
