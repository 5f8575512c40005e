use rayon::prelude::*;

use super::refine::refine_similar;
use super::{InscribedTriangle, SolverOptions, WINDOW_LADDER};
use crate::curve::{wrap, Curve, ParamInterval, Point};
use crate::error::{Error, Result};
use crate::shape::TriangleShape;
use crate::winding::{passes_through, winding_closed, PlanarPath, Vec2};

#[derive(Clone, Debug, PartialEq)]
pub struct EquilateralSolution {
    pub base_param: f64,
    /// The input curve relocated so that `o = γ(0)`.
    pub curve: Curve,
    /// `o = γ(0)`, `p = γ(s*)`, `q = γ(s*·t*)`.
    pub triangle: InscribedTriangle,
    pub s_star: f64,
    pub t_star: f64,
    pub s1: f64,
    pub s2: f64,
    /// Window on which strong monotonicity was checked.
    pub epsilon: f64,
    pub monotone: bool,
    /// Winding number of `L_{s₁,s₂}` around the origin.
    pub loop_winding: i64,
    pub warnings: Vec<String>,
}

/// Parameters `−ε < t < ε` on a half-step grid, plus `t = 0`, in increasing order.
fn window_grid(epsilon: f64, count: usize) -> Vec<f64> {
    let mut ts: Vec<f64> = (0..count)
        .map(|i| -epsilon + 2.0 * epsilon * (i as f64 + 0.5) / count as f64)
        .collect();
    ts.push(0.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// Strong monotonicity of the base point `o = γ(0)` on the window
/// `(1 − ε, ε)`: for each sampled `p = γ(u)` in the window, the projection
/// `a_p(t) = (γ(t) − o)·(p − o)/‖p − o‖` is monotone in `t` across the window.
pub fn check_strong_monotone(curve: &Curve, epsilon: f64, samples: usize) -> Result<bool> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 0.5), got {epsilon}")));
    }
    if samples < 2 {
        return Err(Error::invalid(format!("need at least 2 samples, got {samples}")));
    }
    let o = curve.base();
    let scale = curve.diameter();
    let chords: Vec<Point> = window_grid(epsilon, 2 * samples)
        .into_iter()
        .map(|t| {
            let v = curve.eval(t).sub(o);
            if t != 0.0 && v.norm() <= 1e-14 * scale {
                Err(Error::degenerate(format!("curve revisits the base point at t = {t}")))
            } else {
                Ok(v)
            }
        })
        .collect::<Result<_>>()?;
    let probes = (0..samples).map(|j| -epsilon + 2.0 * epsilon * (j as f64 + 0.5) / samples as f64);
    for u in probes {
        let op = curve.eval(u).sub(o);
        let len = op.norm();
        if len <= 1e-14 * scale {
            continue;
        }
        let dir = op.scale(1.0 / len);
        let values: Vec<f64> = chords.iter().map(|v| v.dot(&dir)).collect();
        let tol = 1e-12 * len;
        let rising = values.windows(2).all(|w| w[1] >= w[0] - tol);
        let falling = values.windows(2).all(|w| w[1] <= w[0] + tol);
        if !(rising || falling) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest ε on the window ladder at which the base point is strongly monotone.
pub fn strongly_monotone_window(curve: &Curve, samples: usize) -> Result<Option<f64>> {
    for &eps in &WINDOW_LADDER {
        if check_strong_monotone(curve, eps, samples)? {
            return Ok(Some(eps));
        }
    }
    Ok(None)
}

fn ratio_point(curve: &Curve, s: f64, d: f64, gs: &Point, t: f64) -> Vec2 {
    let x = curve.eval(s * t);
    let o = curve.base();
    [x.distance(o) / d - 1.0, x.distance(gs) / d - 1.0]
}

fn ratio_scale(curve: &Curve, s: f64) -> Result<(f64, Point)> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::invalid(format!("s must lie in (0, 1), got {s}")));
    }
    let gs = curve.eval(s);
    let d = gs.distance(curve.base());
    if d <= 1e-14 * curve.diameter() {
        return Err(Error::degenerate(format!("γ({s}) coincides with the base point")));
    }
    Ok((d, gs))
}

/// `R_s(t) = (‖γ(st) − o‖/‖γ(s) − o‖ − 1, ‖γ(st) − γ(s)‖/‖γ(s) − o‖ − 1)`
/// sampled at `m` uniform `t ∈ [0, 1]`. Starts at `(−1, 0)` and ends at
/// `(0, −1)` exactly.
pub fn ratio_path(curve: &Curve, s: f64, m: usize) -> Result<PlanarPath> {
    if m < 32 {
        return Err(Error::invalid(format!("ratio path needs at least 32 samples, got {m}")));
    }
    let (d, gs) = ratio_scale(curve, s)?;
    let points = (0..m)
        .map(|i| {
            let t = if i + 1 == m { 1.0 } else { i as f64 / (m - 1) as f64 };
            ratio_point(curve, s, d, &gs, t)
        })
        .collect();
    Ok(PlanarPath::open(points))
}

/// `t`-values of [`ratio_path_on_vertices`]: 0, each curve vertex in `(0, s)`, 1.
fn vertex_ts(curve: &Curve, s: f64) -> Vec<f64> {
    let mut ts = vec![0.0];
    ts.extend(curve.params().iter().filter(|&&p| p > 0.0 && p < s).map(|&p| p / s));
    ts.push(1.0);
    ts
}

/// `R_s` sampled at `t = 0`, at every curve vertex, and at `t = 1`.
pub fn ratio_path_on_vertices(curve: &Curve, s: f64) -> Result<PlanarPath> {
    let (d, gs) = ratio_scale(curve, s)?;
    Ok(PlanarPath::open(
        vertex_ts(curve, s).into_iter().map(|t| ratio_point(curve, s, d, &gs, t)).collect(),
    ))
}

/// `L_{s,s'} = R_s * R̄_{s'}`, closed.
pub fn ratio_loop(curve: &Curve, s: f64, s_prime: f64) -> Result<PlanarPath> {
    let a = ratio_path_on_vertices(curve, s)?;
    let b = ratio_path_on_vertices(curve, s_prime)?;
    Ok(PlanarPath::loop_of(&a, &b.reversed()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum LoopStatus {
    Value(i64),
    Singular,
}

fn loop_status(curve: &Curve, s1: f64, s: f64, opts: &SolverOptions) -> Result<LoopStatus> {
    let l = ratio_loop(curve, s1, s)?;
    if passes_through(&l, [0.0, 0.0], opts.singular_tol).is_some() {
        return Ok(LoopStatus::Singular);
    }
    match winding_closed(&l, [0.0, 0.0]) {
        Ok(w) => Ok(LoopStatus::Value(w)),
        Err(Error::SingularPath { .. }) => Ok(LoopStatus::Singular),
        Err(e) => Err(e),
    }
}

/// Seed `t` on `R_s` nearest to the origin.
fn nearest_on_ratio_path(curve: &Curve, s: f64) -> Result<f64> {
    let (d, gs) = ratio_scale(curve, s)?;
    let ts = vertex_ts(curve, s);
    let pts: Vec<Vec2> = ts.iter().map(|&t| ratio_point(curve, s, d, &gs, t)).collect();
    let mut best = (f64::INFINITY, 0.5);
    for k in 0..pts.len() - 1 {
        let (a, b) = (pts[k], pts[k + 1]);
        let ab = [b[0] - a[0], b[1] - a[1]];
        let len2 = ab[0] * ab[0] + ab[1] * ab[1];
        let lambda = if len2 > 0.0 { (-(a[0] * ab[0] + a[1] * ab[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
        let x = [a[0] + lambda * ab[0], a[1] + lambda * ab[1]];
        let dist = x[0].hypot(x[1]);
        if dist < best.0 {
            best = (dist, ts[k] + lambda * (ts[k + 1] - ts[k]));
        }
    }
    Ok(best.1)
}

/// Finds an inscribed equilateral triangle with a vertex at `γ(base_param)`.
///
/// Tracks the winding of `L_{s₁,s}` around the origin for `s` between `s₂`
/// (near the base, winding 1) and the farthest parameter `s₁` (winding 0);
/// the change brackets an `s*` whose ratio path passes through the origin.
pub fn solve_equilateral(curve: &Curve, base_param: f64, opts: &SolverOptions) -> Result<EquilateralSolution> {
    let base_param = wrap(base_param);
    let curve = curve.rebased(base_param);
    let mut warnings = Vec::new();
    let window = strongly_monotone_window(&curve, opts.monotone_samples)?;
    let epsilon = window.unwrap_or(WINDOW_LADDER[WINDOW_LADDER.len() - 1]);
    if window.is_none() {
        warnings.push("base point is not strongly monotone on any window; continuing".to_string());
    }
    let o = curve.base().clone();
    let s1 = curve.farthest_param(&o);
    let d = curve.min_distance_excluding(&o, &ParamInterval::around_zero(epsilon))? / 3.0;
    let s2 = curve
        .first_param_at_distance(&o, d, 1.0, 1.0 - epsilon)
        .or_else(|| curve.first_param_at_distance(&o, d, 1.0, s1))
        .ok_or_else(|| Error::degenerate("curve never leaves the neighbourhood of the base point"))?;

    let loop_winding = match loop_status(&curve, s1, s2, opts)? {
        LoopStatus::Value(w) => w,
        LoopStatus::Singular => {
            return Err(Error::HypothesisViolation(format!("L(s₁, s₂) passes through the origin (s₂ = {s2})")))
        }
    };
    if loop_winding != 1 {
        return Err(Error::HypothesisViolation(format!(
            "winding of L(s₁, s₂) around the origin is {loop_winding}, expected 1"
        )));
    }

    let g = opts.grid_size.max(2);
    let ss: Vec<f64> = (0..g).map(|i| s2 + (s1 - s2) * i as f64 / (g - 1) as f64).collect();
    let statuses: Vec<LoopStatus> = ss
        .par_iter()
        .map(|&s| loop_status(&curve, s1, s, opts))
        .collect::<Result<_>>()?;
    let mut s_star = None;
    for i in 0..g {
        match statuses[i] {
            LoopStatus::Singular => {
                s_star = Some(ss[i]);
                break;
            }
            LoopStatus::Value(w) if i + 1 < g && matches!(statuses[i + 1], LoopStatus::Value(v) if v != w) => {
                s_star = Some(bisect_loop(&curve, s1, ss[i], w, ss[i + 1], opts)?);
                break;
            }
            _ => {}
        }
    }
    let s_star = s_star.ok_or_else(|| Error::NoBracket {
        reason: format!("winding of L(s₁, s) constant on all {g} grid points"),
        grid: Vec::new(),
    })?;
    let u = nearest_on_ratio_path(&curve, s_star)?;
    let triangle = refine_similar(&curve, &TriangleShape::equilateral(), s_star, s_star * u, opts)?;
    let t_star = triangle.t_q / triangle.t_p;
    Ok(EquilateralSolution {
        base_param,
        s_star: triangle.t_p,
        t_star,
        triangle,
        curve,
        s1,
        s2,
        epsilon,
        monotone: window.is_some(),
        loop_winding,
        warnings,
    })
}

fn bisect_loop(curve: &Curve, s1: f64, mut lo: f64, w_lo: i64, mut hi: f64, opts: &SolverOptions) -> Result<f64> {
    while (hi - lo).abs() > opts.bracket_width {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        match loop_status(curve, s1, mid, opts)? {
            LoopStatus::Singular => return Ok(mid),
            LoopStatus::Value(w) if w == w_lo => lo = mid,
            LoopStatus::Value(_) => hi = mid,
        }
    }
    Ok(0.5 * (lo + hi))
}
