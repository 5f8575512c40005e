//! End-to-end inscription solvers.
//!
//! * [`solve_similar`]: sweeps `p = γ(t)` from near the base point out to the
//!   farthest point, tracking the winding invariant of the re-framed curve
//!   ([`sphere_winding`]); a change in the invariant brackets a parameter at
//!   which the curve meets the sphere of candidate third vertices.
//! * [`solve_equilateral`]: tracks the winding of the loop `R_{s₁} * R̄_s` of
//!   ratio paths around the origin as `s` moves from the farthest point to a
//!   point near the base, and refines the crossing it brackets.

mod equilateral;
mod hypothesis;
mod refine;
mod similar;

pub use equilateral::{
    check_strong_monotone, ratio_loop, ratio_path, ratio_path_on_vertices, solve_equilateral,
    strongly_monotone_window, EquilateralSolution,
};
pub use hypothesis::{check_hypothesis, estimate_theta_bounds, AngleConditionReport, ThetaBounds};
pub use refine::refine_similar;
pub use similar::{
    nearest_param_to_sphere, projected_curve, solve_similar, sphere_winding, sweep_similar, Bracket,
    SimilarSolution, SweepResult,
};

use serde::{Deserialize, Serialize};

use crate::curve::{param_distance, Point};

/// Window sizes tried, largest first, for δ (angle condition) and ε
/// (strong monotonicity).
pub const WINDOW_LADDER: [f64; 5] = [0.2, 0.1, 0.05, 0.02, 0.01];

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Number of sweep parameters evaluated before bisection (≥ 64).
    pub grid_size: usize,
    /// Bisection stops once a bracket is narrower than this (parameter units).
    pub bracket_width: f64,
    /// Distance, in the canonical frame, under which the projected curve is
    /// considered to pass through `(1, 0)`; also used for ratio paths at `(0, 0)`.
    pub singular_tol: f64,
    /// Refinement succeeds when both residuals are below this.
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// Central finite-difference step in parameter units.
    pub fd_step: f64,
    /// Triangles whose parameter pairs differ by at most this are merged.
    pub dedup_tol: f64,
    /// Grid resolution per axis for the angle-condition estimate.
    pub theta_samples: usize,
    /// Number of sampled `p` for the strong-monotonicity check.
    pub monotone_samples: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid_size: 256,
            bracket_width: 1e-10,
            singular_tol: 1e-9,
            residual_tol: 1e-10,
            max_iterations: 100,
            fd_step: 1e-7,
            dedup_tol: 1e-4,
            theta_samples: 64,
            monotone_samples: 32,
        }
    }
}

/// A triangle `△opq` inscribed in the (base-relocated) curve, with
/// `o = γ(0)`, `p = γ(t_p)`, `q = γ(t_q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedTriangle {
    pub t_p: f64,
    pub t_q: f64,
    pub point_o: Point,
    pub point_p: Point,
    pub point_q: Point,
    pub residual_r: f64,
    pub residual_r_prime: f64,
}

impl InscribedTriangle {
    pub fn max_residual(&self) -> f64 {
        self.residual_r.abs().max(self.residual_r_prime.abs())
    }

    /// Same vertex parameters (in either order) within `tol`.
    pub fn same_as(&self, other: &InscribedTriangle, tol: f64) -> bool {
        let direct = param_distance(self.t_p, other.t_p) <= tol && param_distance(self.t_q, other.t_q) <= tol;
        let swapped = param_distance(self.t_p, other.t_q) <= tol && param_distance(self.t_q, other.t_p) <= tol;
        direct || swapped
    }
}

/// Value of the sweep invariant at one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WindingStatus {
    Value { winding: i64 },
    /// The curve meets the candidate sphere near segment `segment`.
    Singular { segment: usize },
    /// `γ(t)` coincides with the base point.
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSample {
    pub t: f64,
    #[serde(flatten)]
    pub status: WindingStatus,
}

pub(crate) fn push_distinct(list: &mut Vec<InscribedTriangle>, tri: InscribedTriangle, tol: f64) {
    if !list.iter().any(|t| t.same_as(&tri, tol)) {
        list.push(tri);
    }
}
