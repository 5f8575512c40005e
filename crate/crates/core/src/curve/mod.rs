//! Closed polylines in R^n with a normalized chord-length parameterization.

mod generators;
mod point;
mod spec;

pub use generators::{generate, Generator};
pub use point::{point_segment_distance, Point};
pub use spec::CurveSpec;

use crate::error::{Error, Result};

const GOLDEN_ITERS: usize = 80;

/// A closed polyline. The last vertex is implicitly joined back to the first.
///
/// `params[k]` is the normalized cumulative chord length at vertex `k`;
/// `params[0] = 0` and the closing entry `params[m] = 1` belongs to the
/// return to vertex 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    points: Vec<Point>,
    params: Vec<f64>,
    length: f64,
    dim: usize,
}

/// An open parameter interval `(start, start + width)` taken modulo 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamInterval {
    pub start: f64,
    pub width: f64,
}

impl ParamInterval {
    /// The window `(1 − ε, ε)` around parameter 0.
    pub fn around_zero(epsilon: f64) -> Self {
        ParamInterval {
            start: 1.0 - epsilon,
            width: 2.0 * epsilon,
        }
    }

    pub fn new(start: f64, end: f64) -> Self {
        ParamInterval {
            start: start.rem_euclid(1.0),
            width: (end - start).rem_euclid(1.0),
        }
    }

    /// The complementary closed arc as at most two plain sub-intervals of [0, 1].
    fn retained(&self) -> Vec<(f64, f64)> {
        let a = (self.start + self.width).rem_euclid(1.0);
        let b = self.start;
        if a <= b {
            vec![(a, b)]
        } else {
            vec![(0.0, b), (a, 1.0)]
        }
    }
}

impl Curve {
    /// Builds a curve from at least four vertices of a common dimension.
    /// A trailing vertex equal to the first is dropped (explicitly closed input).
    pub fn new(mut points: Vec<Point>) -> Result<Self> {
        if points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        if points.len() < 4 {
            return Err(Error::invalid(format!(
                "a curve needs at least 4 distinct vertices, got {}",
                points.len()
            )));
        }
        let dim = points[0].dim();
        if let Some(i) = points.iter().position(|p| p.dim() != dim) {
            return Err(Error::invalid(format!(
                "vertex {i} has dimension {}, expected {dim}",
                points[i].dim()
            )));
        }
        let m = points.len();
        let mut cumulative = Vec::with_capacity(m + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for k in 0..m {
            let seg = points[k].distance(&points[(k + 1) % m]);
            if seg == 0.0 {
                return Err(Error::invalid(format!(
                    "vertices {k} and {} coincide (zero-length segment)",
                    (k + 1) % m
                )));
            }
            acc += seg;
            cumulative.push(acc);
        }
        let length = acc;
        let mut params: Vec<f64> = cumulative.iter().map(|c| c / length).collect();
        params[m] = 1.0;
        Ok(Curve {
            points,
            params,
            length,
            dim,
        })
    }

    pub fn from_coords(rows: &[Vec<f64>]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| Point::from_slice(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.points
    }

    /// Vertex parameters including the closing 1.0.
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn base(&self) -> &Point {
        &self.points[0]
    }

    /// Diagonal of the axis-aligned bounding box.
    pub fn diameter(&self) -> f64 {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in &self.points {
            for (i, c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(*c);
                hi[i] = hi[i].max(*c);
            }
        }
        lo.iter()
            .zip(&hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_segment_length(&self) -> f64 {
        (0..self.points.len())
            .map(|k| self.segment(k).0.distance(self.segment(k).1))
            .fold(0.0, f64::max)
    }

    /// Endpoints of segment `k`.
    pub fn segment(&self, k: usize) -> (&Point, &Point) {
        (&self.points[k], &self.points[(k + 1) % self.points.len()])
    }

    /// Segment index and local coordinate λ ∈ [0, 1) of parameter `t`
    /// (reduced modulo 1).
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let t = wrap(t);
        let m = self.points.len();
        // Largest k with params[k] <= t.
        let k = match self.params[..m].binary_search_by(|p| p.total_cmp(&t)) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        let lambda = (t - self.params[k]) / (self.params[k + 1] - self.params[k]);
        (k, lambda)
    }

    /// γ(t) by linear interpolation; `t` is taken modulo 1.
    pub fn eval(&self, t: f64) -> Point {
        let (k, lambda) = self.locate(t);
        let (a, b) = self.segment(k);
        Point::lerp(a, b, lambda)
    }

    /// Curve with `m` vertices at parameters `k/m`.
    pub fn resample(&self, m: usize) -> Result<Curve> {
        if m < 16 {
            return Err(Error::invalid(format!("resample needs m >= 16, got {m}")));
        }
        Curve::new((0..m).map(|k| self.eval(k as f64 / m as f64)).collect())
    }

    /// The same curve with the vertex list rotated so parameter `t` becomes 0.
    /// A vertex is inserted at γ(t) when `t` falls inside a segment. The new
    /// parameterization is the old one shifted by `t`.
    pub fn rebased(&self, t: f64) -> Curve {
        let (k, lambda) = self.locate(t);
        let m = self.points.len();
        let mut pts = Vec::with_capacity(m + 1);
        // Parameters within rounding of a vertex select that vertex.
        let snap = 1e-12;
        let start = if lambda == 0.0 || (wrap(t) - self.params[k]).abs() <= snap {
            k
        } else if (self.params[k + 1] - wrap(t)).abs() <= snap {
            (k + 1) % m
        } else {
            let x = self.eval(t);
            let (a, b) = self.segment(k);
            // Inserting a point indistinguishable from a neighbour would create
            // a zero-length segment; fall back to that neighbour.
            if x == *a {
                k
            } else if x == *b {
                (k + 1) % m
            } else {
                pts.push(x);
                (k + 1) % m
            }
        };
        for i in 0..m {
            pts.push(self.points[(start + i) % m].clone());
        }
        Curve::new(pts).expect("rebasing preserves curve validity")
    }

    /// Applies `f` to every vertex.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Curve> {
        Curve::new(self.points.iter().map(f).collect())
    }

    /// Parameter maximizing `‖γ(t) − base‖`. Ties go to the smallest `t`.
    pub fn farthest_param(&self, base: &Point) -> f64 {
        let m = self.points.len();
        let mut best_k = 0;
        let mut best_d = f64::NEG_INFINITY;
        for (k, p) in self.points.iter().enumerate() {
            let d = p.distance(base);
            if d > best_d {
                best_d = d;
                best_k = k;
            }
        }
        let lo = if best_k == 0 {
            self.params[m - 1] - 1.0
        } else {
            self.params[best_k - 1]
        };
        let hi = self.params[best_k + 1];
        let f = |t: f64| self.eval(t).distance(base);
        let refined = golden_section_max(&f, lo, hi);
        if f(refined) > best_d {
            wrap(refined)
        } else {
            self.params[best_k]
        }
    }

    /// Infimum of the distance from `base` to the curve outside `excluded`,
    /// computed exactly per (clipped) segment.
    pub fn min_distance_excluding(&self, base: &Point, excluded: &ParamInterval) -> Result<f64> {
        if excluded.width.is_nan() || excluded.width >= 1.0 {
            return Err(Error::invalid("excluded range covers the whole curve"));
        }
        let mut best = f64::INFINITY;
        for (a, b) in excluded.retained() {
            for k in 0..self.points.len() {
                let (p0, p1) = (self.params[k], self.params[k + 1]);
                let lo = a.max(p0);
                let hi = b.min(p1);
                if lo > hi {
                    continue;
                }
                let x0 = self.eval_on_segment(k, lo);
                let x1 = self.eval_on_segment(k, hi);
                best = best.min(point_segment_distance(base, &x0, &x1).0);
            }
        }
        Ok(best)
    }

    /// Evaluates the affine piece of segment `k` at `t` (no modular wrap, so
    /// `t = 1` on the last segment returns the closing vertex).
    fn eval_on_segment(&self, k: usize, t: f64) -> Point {
        let lambda = (t - self.params[k]) / (self.params[k + 1] - self.params[k]);
        let (a, b) = self.segment(k);
        Point::lerp(a, b, lambda.clamp(0.0, 1.0))
    }

    /// First parameter in `(from, to)` (walking forward when `from < to`,
    /// backward otherwise) at which `‖γ(t) − base‖` reaches `radius`, located
    /// to near machine precision by bisection on the crossing segment.
    pub fn first_param_at_distance(
        &self,
        base: &Point,
        radius: f64,
        from: f64,
        to: f64,
    ) -> Option<f64> {
        let steps = 4 * self.points.len();
        let f = |t: f64| self.eval(t).distance(base) - radius;
        let mut prev_t = from;
        if f(from) >= 0.0 {
            return None;
        }
        for i in 1..=steps {
            let t = from + (to - from) * i as f64 / steps as f64;
            let ft = f(t);
            if ft >= 0.0 {
                let (mut a, mut b) = (prev_t, t);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if mid == a || mid == b {
                        break;
                    }
                    if f(mid) >= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                return Some(wrap(b));
            }
            prev_t = t;
        }
        None
    }
}

/// Reduces a parameter into [0, 1).
pub fn wrap(t: f64) -> f64 {
    let w = t.rem_euclid(1.0);
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// Modular distance between two parameters.
pub fn param_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

pub(crate) fn golden_section_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
