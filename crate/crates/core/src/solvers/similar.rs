use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hypothesis::{estimate_theta_bounds, AngleConditionReport};
use super::refine::refine_similar;
use super::{push_distinct, GridSample, InscribedTriangle, SolverOptions, WindingStatus, WINDOW_LADDER};
use crate::curve::{golden_section_max, wrap, Curve, ParamInterval, Point};
use crate::error::{Error, Result};
use crate::frames::{build_frame, project_coords, tri_sphere, ScaledIsometry, Sphere};
use crate::shape::TriangleShape;
use crate::winding::{passes_through, winding_closed, PlanarPath};

/// A parameter interval across which the sweep invariant changes (or a single
/// parameter at which the curve touches the candidate sphere).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub t_low: f64,
    pub t_high: f64,
    pub singular: bool,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.t_low + self.t_high)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: Vec<GridSample>,
    /// First bracket along the sweep.
    pub bracket: Option<Bracket>,
    pub brackets: Vec<Bracket>,
    pub crossings: Vec<InscribedTriangle>,
    /// Start of the sweep: `‖γ(t) − o‖ = d_min / r`.
    pub t_near: f64,
    /// End of the sweep: the farthest parameter from `o`.
    pub t_far: f64,
    /// Window half-width used for `d_min`.
    pub epsilon: f64,
    pub refine_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarSolution {
    /// Parameter of the input curve used as the base point `o`.
    pub base_param: f64,
    /// The input curve relocated so that `o = γ(0)`; triangle parameters refer to it.
    pub curve: Curve,
    pub hypothesis: Option<AngleConditionReport>,
    pub sweep: SweepResult,
    pub triangles: Vec<InscribedTriangle>,
    pub warnings: Vec<String>,
}

/// Projected image `P ∘ I(γ)` of the curve under `frame`, as a closed planar
/// path. A vertex is inserted wherever a segment crosses `x_n = 0`, which
/// makes the winding around `(1, 0)` exact for the polyline: between
/// insertions both the true image of a segment and its chord stay in one open
/// half plane `h > 0` or `h < 0`. The second vector maps each path vertex to
/// its curve segment.
pub fn projected_curve(curve: &Curve, frame: &ScaledIsometry) -> (PlanarPath, Vec<usize>) {
    let images: Vec<Point> = curve.vertices().iter().map(|x| frame.apply_unchecked(x.coords())).collect();
    let n = curve.dimension();
    let m = images.len();
    let mut points = Vec::with_capacity(m + m / 4);
    let mut origin = Vec::with_capacity(m + m / 4);
    for k in 0..m {
        let a = &images[k];
        let b = &images[(k + 1) % m];
        points.push(project_coords(a.coords()).to_array());
        origin.push(k);
        let (ha, hb) = (a[n - 1], b[n - 1]);
        if (ha < 0.0 && hb > 0.0) || (ha > 0.0 && hb < 0.0) {
            let lambda = ha / (ha - hb);
            let mut y = Point::lerp(a, b, lambda).into_coords();
            y[n - 1] = 0.0;
            points.push(project_coords(&y).to_array());
            origin.push(k);
        }
    }
    (PlanarPath::closed(points), origin)
}

fn frame_at(curve: &Curve, t: f64, shape: &TriangleShape) -> Result<(Sphere, ScaledIsometry)> {
    let o = curve.base();
    let p = curve.eval(t);
    if p.distance(o) <= 1e-14 * curve.diameter() {
        return Err(Error::degenerate(format!("γ({t}) coincides with the base point")));
    }
    let sphere = tri_sphere(o, &p, shape)?;
    let frame = build_frame(&sphere);
    Ok((sphere, frame))
}

/// The sweep invariant `w(t)`: winding number around `(1, 0)` of the curve
/// after framing `tri(o, γ(t))` onto the canonical sphere and projecting.
/// Singular when the projected curve passes within `singular_tol` of `(1, 0)`,
/// i.e. when the curve meets the candidate sphere.
pub fn sphere_winding(curve: &Curve, t: f64, shape: &TriangleShape, opts: &SolverOptions) -> Result<WindingStatus> {
    let (_, frame) = frame_at(curve, t, shape)?;
    let (path, origin) = projected_curve(curve, &frame);
    if let Some(i) = passes_through(&path, [1.0, 0.0], opts.singular_tol) {
        return Ok(WindingStatus::Singular { segment: origin[i] });
    }
    match winding_closed(&path, [1.0, 0.0]) {
        Ok(w) => Ok(WindingStatus::Value { winding: w }),
        Err(Error::SingularPath { index }) => Ok(WindingStatus::Singular {
            segment: origin[index.min(origin.len() - 1)],
        }),
        Err(e) => Err(e),
    }
}

fn status_at(curve: &Curve, t: f64, shape: &TriangleShape, opts: &SolverOptions) -> Result<WindingStatus> {
    match sphere_winding(curve, t, shape, opts) {
        Err(Error::Degenerate(_)) => Ok(WindingStatus::Skipped),
        other => other,
    }
}

/// Parameter of the curve point nearest to `sphere`.
pub fn nearest_param_to_sphere(curve: &Curve, sphere: &Sphere) -> f64 {
    let params = curve.params();
    let m = curve.vertex_count();
    let (best_k, best_d) = curve
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, x)| (k, sphere.distance_to(x)))
        .fold((0, f64::INFINITY), |acc, (k, d)| if d < acc.1 { (k, d) } else { acc });
    let lo = if best_k == 0 { params[m - 1] - 1.0 } else { params[best_k - 1] };
    let hi = params[best_k + 1];
    let f = |t: f64| -sphere.distance_to(&curve.eval(t));
    let refined = golden_section_max(&f, lo, hi);
    if -f(refined) < best_d {
        wrap(refined)
    } else {
        params[best_k]
    }
}

/// Largest δ on the ladder at which the angle condition holds for `theta_v`,
/// with its report; `None` when no rung satisfies it.
fn select_window(curve: &Curve, theta_v: f64, samples: usize) -> (Option<f64>, Option<AngleConditionReport>, Vec<String>) {
    let mut warnings = Vec::new();
    let mut last = None;
    for &delta in &WINDOW_LADDER {
        match estimate_theta_bounds(curve, delta, samples) {
            Ok(bounds) => {
                let report = bounds.with_theta_v(theta_v);
                if report.satisfied {
                    return (Some(delta), Some(report), warnings);
                }
                last = Some(report);
            }
            Err(e) => warnings.push(format!("angle bounds at δ = {delta}: {e}")),
        }
    }
    (None, last, warnings)
}

/// Evaluates `w(t)` on a grid from `t_near` to `t_far`, bisects every
/// change of the invariant down to `bracket_width`, and refines each bracket
/// into an inscribed triangle. The curve's base point is `γ(0)`.
pub fn sweep_similar(curve: &Curve, shape: &TriangleShape, opts: &SolverOptions) -> Result<SweepResult> {
    if opts.grid_size < 64 {
        return Err(Error::NoBracket {
            reason: format!("grid of {} points is too coarse (need at least 64)", opts.grid_size),
            grid: Vec::new(),
        });
    }
    let (window, _, _) = select_window(curve, shape.theta_v, opts.theta_samples);
    let epsilon = window.unwrap_or(WINDOW_LADDER[WINDOW_LADDER.len() - 1]);
    let o = curve.base().clone();
    let t_far = curve.farthest_param(&o);
    let d_min = curve.min_distance_excluding(&o, &ParamInterval::around_zero(epsilon))? / 2.0;
    let radius = d_min / shape.r;
    let t_near = curve
        .first_param_at_distance(&o, radius, 0.0, epsilon)
        .or_else(|| curve.first_param_at_distance(&o, radius, 0.0, t_far))
        .ok_or_else(|| Error::degenerate("curve never leaves the neighbourhood of the base point"))?;

    let g = opts.grid_size;
    let ts: Vec<f64> = (0..g)
        .map(|i| t_near + (t_far - t_near) * i as f64 / (g - 1) as f64)
        .collect();
    let statuses: Vec<WindingStatus> = ts
        .par_iter()
        .map(|&t| status_at(curve, t, shape, opts))
        .collect::<Result<_>>()?;
    let grid: Vec<GridSample> = ts.iter().zip(&statuses).map(|(&t, &status)| GridSample { t, status }).collect();

    let mut brackets = Vec::new();
    for i in 0..g {
        if let WindingStatus::Singular { .. } = statuses[i] {
            brackets.push(Bracket { t_low: ts[i], t_high: ts[i], singular: true });
            continue;
        }
        if i + 1 == g {
            break;
        }
        if let (WindingStatus::Value { winding: a }, WindingStatus::Value { winding: b }) = (statuses[i], statuses[i + 1]) {
            if a != b {
                brackets.push(bisect(curve, shape, opts, ts[i], a, ts[i + 1])?);
            }
        }
    }
    if brackets.is_empty() {
        return Err(Error::NoBracket {
            reason: format!("sweep invariant constant on all {g} grid points"),
            grid,
        });
    }

    let mut crossings = Vec::new();
    let mut refine_failures = Vec::new();
    for b in &brackets {
        let t0 = b.mid();
        let seed_s = match frame_at(curve, t0, shape) {
            Ok((sphere, _)) => nearest_param_to_sphere(curve, &sphere),
            Err(e) => {
                refine_failures.push(format!("seed at t = {t0}: {e}"));
                continue;
            }
        };
        match refine_similar(curve, shape, t0, seed_s, opts) {
            Ok(tri) => push_distinct(&mut crossings, tri, opts.dedup_tol),
            Err(e) => refine_failures.push(format!("bracket at t = {t0}: {e}")),
        }
    }

    Ok(SweepResult {
        grid,
        bracket: brackets.first().copied(),
        brackets,
        crossings,
        t_near,
        t_far,
        epsilon,
        refine_failures,
    })
}

/// Shrinks `[lo, hi]` (with `w(lo) = w_lo ≠ w(hi)`) until narrower than the
/// bracket width, stopping early at a singular midpoint.
fn bisect(curve: &Curve, shape: &TriangleShape, opts: &SolverOptions, mut lo: f64, w_lo: i64, mut hi: f64) -> Result<Bracket> {
    while (hi - lo).abs() > opts.bracket_width {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        match status_at(curve, mid, shape, opts)? {
            WindingStatus::Singular { .. } => {
                return Ok(Bracket { t_low: mid, t_high: mid, singular: true });
            }
            WindingStatus::Value { winding } if winding == w_lo => lo = mid,
            WindingStatus::Value { .. } => hi = mid,
            WindingStatus::Skipped => break,
        }
    }
    Ok(Bracket { t_low: lo.min(hi), t_high: lo.max(hi), singular: false })
}

/// Finds triangles similar to `shape` with vertex `o = γ(base_param)`
/// corresponding to the shape's distinguished vertex.
///
/// The angle condition is checked on the δ ladder and only warned about when
/// it fails, since it is sufficient but not necessary.
pub fn solve_similar(curve: &Curve, shape: &TriangleShape, base_param: f64, opts: &SolverOptions) -> Result<SimilarSolution> {
    let base_param = wrap(base_param);
    let relocated = curve.rebased(base_param);
    let (window, hypothesis, mut warnings) = select_window(&relocated, shape.theta_v, opts.theta_samples);
    if window.is_none() {
        warnings.push(format!(
            "angle condition sup Θ < θ_v < inf Θ' not met for θ_v = {:.4} rad on any window; continuing",
            shape.theta_v
        ));
    }
    let sweep = sweep_similar(&relocated, shape, opts)?;
    let mut triangles = Vec::new();
    for tri in &sweep.crossings {
        push_distinct(&mut triangles, tri.clone(), opts.dedup_tol);
    }
    warnings.extend(sweep.refine_failures.iter().cloned());
    Ok(SimilarSolution {
        base_param,
        curve: relocated,
        hypothesis,
        sweep,
        triangles,
        warnings,
    })
}
