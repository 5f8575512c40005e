//! Winding numbers of planar polylines.
//!
//! Angles are accumulated per segment as `atan2(cross, dot)`, so there is no
//! branch cut and sweeps are exactly additive under concatenation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

/// Relative tolerance (× path diameter) under which a vertex or segment is
/// considered to pass through the base point.
pub const SINGULAR_REL_TOL: f64 = 1e-12;

/// Maximum distance of a closed sweep from the nearest integer.
const INTEGER_TOL: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPath {
    pub points: Vec<Vec2>,
    pub closed: bool,
}

impl PlanarPath {
    pub fn open(points: Vec<Vec2>) -> Self {
        PlanarPath { points, closed: false }
    }

    pub fn closed(points: Vec<Vec2>) -> Self {
        PlanarPath { points, closed: true }
    }

    /// Segments as index pairs, including the closing one for closed paths.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.points.len();
        let count = match (self.closed, n) {
            (_, 0 | 1) => 0,
            (true, _) => n,
            (false, _) => n - 1,
        };
        (0..count).map(move |i| (i, (i + 1) % n))
    }

    pub fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &self.points {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt()
    }

    pub fn reversed(&self) -> PlanarPath {
        let mut points = self.points.clone();
        points.reverse();
        PlanarPath { points, closed: self.closed }
    }

    /// `self` followed by `other`; the joint vertex is kept once when
    /// `other` starts where `self` ends.
    pub fn concat(&self, other: &PlanarPath) -> PlanarPath {
        let mut points = self.points.clone();
        let skip = usize::from(points.last() == other.points.first());
        points.extend_from_slice(&other.points[skip..]);
        PlanarPath::open(points)
    }

    /// Closed loop `f * g`, dropping the final vertex of `g` when it repeats
    /// the first vertex of `f`.
    pub fn loop_of(f: &PlanarPath, g: &PlanarPath) -> PlanarPath {
        let mut joined = f.concat(g);
        if joined.points.len() > 1 && joined.points.first() == joined.points.last() {
            joined.points.pop();
        }
        joined.closed = true;
        joined
    }
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

/// Distance from `x` to the segment `[a, b]`.
pub fn segment_distance(x: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = sub(b, a);
    let ax = sub(x, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ax[0] * ab[0] + ax[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let foot = [a[0] + t * ab[0], a[1] + t * ab[1]];
    let d = sub(x, foot);
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

/// Signed turn of the ray from `base` as it follows segment `a → b`, in (−π, π].
fn turn(base: Vec2, a: Vec2, b: Vec2) -> f64 {
    let u = sub(a, base);
    let v = sub(b, base);
    let cross = u[0] * v[1] - u[1] * v[0];
    let dot = u[0] * v[0] + u[1] * v[1];
    cross.atan2(dot)
}

/// Total angle swept around `base`, in turns: `(θ_end − θ_start) / 2π`.
/// For open paths this is the real-valued relative winding.
pub fn angle_sweep(path: &PlanarPath, base: Vec2) -> Result<f64> {
    let tol = SINGULAR_REL_TOL * path.diameter().max(f64::MIN_POSITIVE);
    for (i, p) in path.points.iter().enumerate() {
        let d = sub(*p, base);
        if (d[0] * d[0] + d[1] * d[1]).sqrt() <= tol {
            return Err(Error::SingularPath { index: i });
        }
    }
    let mut turns = Vec::with_capacity(path.points.len());
    for (i, j) in path.segments() {
        let (a, b) = (path.points[i], path.points[j]);
        if segment_distance(base, a, b) <= tol {
            return Err(Error::SingularPath { index: i });
        }
        turns.push(turn(base, a, b));
    }
    Ok(exact_sum(&turns) / std::f64::consts::TAU)
}

/// Correctly rounded sum (Shewchuk's partials), hence independent of the
/// order of the terms; reversing a path negates its sweep bit for bit.
fn exact_sum(values: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &v in values {
        let mut x = v;
        let mut kept = 0;
        for i in 0..partials.len() {
            let mut y = partials[i];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    // Round the partials (smallest first, all non-overlapping) to one double,
    // with the half-way correction of the reference algorithm.
    let mut hi = 0.0;
    if let Some(mut n) = partials.len().checked_sub(1) {
        hi = partials[n];
        let mut lo = 0.0;
        while n > 0 {
            n -= 1;
            let x = hi;
            let y = partials[n];
            hi = x + y;
            let yr = hi - x;
            lo = y - yr;
            if lo != 0.0 {
                break;
            }
        }
        if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

/// Integer winding number of a closed path around `base`.
pub fn winding_closed(path: &PlanarPath, base: Vec2) -> Result<i64> {
    if !path.closed {
        return Err(Error::invalid("winding_closed needs a closed path"));
    }
    let sweep = angle_sweep(path, base)?;
    let rounded = sweep.round();
    if (sweep - rounded).abs() >= INTEGER_TOL {
        return Err(Error::NumericalDegeneracy { sweep });
    }
    Ok(rounded as i64)
}

/// First segment passing within `tol` of `base`.
pub fn passes_through(path: &PlanarPath, base: Vec2, tol: f64) -> Option<usize> {
    path.segments()
        .find(|&(i, j)| segment_distance(base, path.points[i], path.points[j]) < tol)
        .map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn unit_square() -> PlanarPath {
        PlanarPath::closed(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    fn circle(turns: usize, n: usize) -> PlanarPath {
        PlanarPath::closed(
            (0..n * turns)
                .map(|k| {
                    let a = TAU * k as f64 / n as f64;
                    [a.cos(), a.sin()]
                })
                .collect(),
        )
    }

    #[test]
    fn half_circle_sweeps_half_turn() {
        let path = PlanarPath::open(
            (0..=64)
                .map(|k| {
                    let a = PI * k as f64 / 64.0;
                    [a.cos(), a.sin()]
                })
                .collect(),
        );
        assert!((angle_sweep(&path, [0.0, 0.0]).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn distant_base_has_small_sweep() {
        let path = PlanarPath::open(vec![[0.0, 0.0], [1.0, 2.0], [2.0, -1.0], [3.0, 0.5]]);
        assert!(angle_sweep(&path, [50.0, -40.0]).unwrap().abs() < 0.5);
    }

    #[test]
    fn collinear_segment_sweeps_nothing() {
        let path = PlanarPath::open(vec![[1.0, 1.0], [2.0, 2.0]]);
        assert_eq!(angle_sweep(&path, [0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn square_windings() {
        assert_eq!(winding_closed(&unit_square(), [0.5, 0.5]).unwrap(), 1);
        assert_eq!(winding_closed(&unit_square().reversed(), [0.5, 0.5]).unwrap(), -1);
        assert_eq!(winding_closed(&unit_square(), [5.0, 5.0]).unwrap(), 0);
        assert_eq!(winding_closed(&circle(2, 64), [0.0, 0.0]).unwrap(), 2);
    }

    #[test]
    fn vertex_at_base_is_singular() {
        assert!(matches!(
            winding_closed(&unit_square(), [1.0, 1.0]),
            Err(Error::SingularPath { index: 2 })
        ));
        assert!(matches!(
            winding_closed(&unit_square(), [0.5, 0.0]),
            Err(Error::SingularPath { index: 0 })
        ));
    }

    #[test]
    fn open_path_rejected_by_winding_closed() {
        let p = PlanarPath::open(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]);
        assert!(matches!(winding_closed(&p, [0.5, 0.2]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn passes_through_examples() {
        let p = PlanarPath::open(vec![[-1.0, -1.0], [-0.5, -0.5], [1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(passes_through(&p, [0.0, 0.0], 1e-12), Some(1));
        assert_eq!(passes_through(&circle(1, 64), [0.0, 0.0], 0.5), None);
    }

    fn random_path(closed: bool) -> impl Strategy<Value = PlanarPath> {
        prop::collection::vec(prop::array::uniform2(-3.0f64..3.0), 3..40)
            .prop_map(move |points| PlanarPath { points, closed })
    }

    fn clear_of(path: &PlanarPath, base: Vec2, tol: f64) -> bool {
        passes_through(path, base, tol).is_none()
            && path.points.iter().all(|p| segment_distance(base, *p, *p) > tol)
    }

    proptest! {
        #[test]
        fn sweep_is_additive(f in random_path(false), g in random_path(false), base in prop::array::uniform2(-3.0f64..3.0)) {
            let mut g = g;
            g.points[0] = *f.points.last().unwrap();
            let joined = f.concat(&g);
            prop_assume!(clear_of(&joined, base, 1e-6));
            let lhs = angle_sweep(&joined, base).unwrap();
            let rhs = angle_sweep(&f, base).unwrap() + angle_sweep(&g, base).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn reversal_negates_exactly(f in random_path(false), base in prop::array::uniform2(-3.0f64..3.0)) {
            prop_assume!(clear_of(&f, base, 1e-6));
            prop_assert_eq!(angle_sweep(&f.reversed(), base).unwrap(), -angle_sweep(&f, base).unwrap());
        }

        #[test]
        fn winding_invariant_under_similarity(
            f in random_path(true),
            base in prop::array::uniform2(-3.0f64..3.0),
            rot in 0.0f64..TAU,
            k in 0.01f64..100.0,
        ) {
            prop_assume!(clear_of(&f, base, 1e-6));
            let (c, s) = (rot.cos(), rot.sin());
            let g = PlanarPath::closed(f.points.iter().map(|p| {
                let d = sub(*p, base);
                [base[0] + k * (c * d[0] - s * d[1]), base[1] + k * (s * d[0] + c * d[1])]
            }).collect());
            prop_assert_eq!(winding_closed(&f, base).unwrap(), winding_closed(&g, base).unwrap());
        }

        #[test]
        fn refinement_leaves_outputs_unchanged(
            f in random_path(true),
            base in prop::array::uniform2(-3.0f64..3.0),
            at in 0usize..40,
            lambda in 0.05f64..0.95,
        ) {
            prop_assume!(clear_of(&f, base, 1e-6));
            let i = at % f.points.len();
            let j = (i + 1) % f.points.len();
            let (a, b) = (f.points[i], f.points[j]);
            let mid = [a[0] + lambda * (b[0] - a[0]), a[1] + lambda * (b[1] - a[1])];
            let mut points = f.points.clone();
            points.insert(i + 1, mid);
            let g = PlanarPath::closed(points);
            prop_assert!((angle_sweep(&f, base).unwrap() - angle_sweep(&g, base).unwrap()).abs() < 1e-12);
            prop_assert_eq!(winding_closed(&f, base).unwrap(), winding_closed(&g, base).unwrap());
        }
    }
}
