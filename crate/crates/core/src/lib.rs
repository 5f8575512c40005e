//! Numerical search for triangles of a prescribed shape inscribed in closed
//! curves embedded in R^n.
//!
//! The similar-triangle solver sweeps the second vertex `p = γ(t)` along the
//! curve and tracks an integer invariant: the winding number, around `(1, 0)`,
//! of the curve after it has been re-framed so that the candidate sphere of
//! third vertices `tri(o, p)` becomes the canonical unit sphere in `{x_n = 0}`
//! and then folded into the half plane by the cylindrical projection
//! `(x_1..x_n) ↦ (|x_1..x_{n-1}|, x_n)`. The invariant can only change when the
//! curve meets the candidate sphere, i.e. when an inscribed triangle exists;
//! bracketed changes are bisected and polished with a damped Newton iteration.
//!
//! The equilateral solver instead follows ratio paths
//! `R_s(t) = (|γ(st) - o| / |γ(s) - o| - 1, |γ(st) - γ(s)| / |γ(s) - o| - 1)`
//! and looks for the parameter `s` at which `R_s` passes through the origin.

pub mod cli;
pub mod curve;
mod error;
pub mod frames;
pub mod report;
pub mod shape;
pub mod solvers;
pub mod svg;
pub mod winding;

pub use curve::{Curve, CurveSpec, ParamInterval, Point};
pub use error::{Error, Result};
pub use frames::{ProjectedPoint, ScaledIsometry, Sphere};
pub use shape::TriangleShape;
pub use solvers::{InscribedTriangle, SolverOptions};
pub use winding::PlanarPath;
