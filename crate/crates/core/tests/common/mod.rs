//! Brute-force ground truth shared by the integration tests. Deliberately
//! shares no numerics with the solvers beyond curve evaluation.

#![allow(dead_code)]

use inscribed_tri::curve::param_distance;
use inscribed_tri::winding::{PlanarPath, Vec2};
use inscribed_tri::{Curve, InscribedTriangle, Point, TriangleShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptimum {
    pub t_best: f64,
    pub s_best: f64,
    pub residual_inf: f64,
    pub grid_step: f64,
}

/// `max(|‖q−o‖/‖p−o‖ − r|, |‖q−p‖/‖p−o‖ − r'|)`, written out independently.
pub fn residual_inf(o: &[f64], p: &[f64], q: &[f64], shape: &TriangleShape) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let op = dist(o, p);
    if op == 0.0 {
        return f64::INFINITY;
    }
    let r1 = dist(o, q) / op - shape.r;
    let r2 = dist(p, q) / op - shape.r_prime;
    r1.abs().max(r2.abs())
}

/// Residual table on the lattice `((i + ½)/N, (j + ½)/N)`; row `i` is `t`.
fn lattice(curve: &Curve, shape: &TriangleShape, n: usize) -> Vec<Vec<f64>> {
    let o = curve.base().coords().to_vec();
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|i| curve.eval((i as f64 + 0.5) / n as f64).coords().to_vec())
        .collect();
    (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| residual_inf(&o, &pts[i], &pts[j], shape)).collect())
        .collect()
}

/// Lattice minimizer of the max-abs residual; ties go to the
/// lexicographically smallest `(t, s)`.
pub fn brute_force_similar(curve: &Curve, shape: &TriangleShape, n: usize) -> GridOptimum {
    assert!(n >= 64);
    let table = lattice(curve, shape, n);
    let mut best = (f64::INFINITY, 0, 0);
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v < best.0 {
                best = (v, i, j);
            }
        }
    }
    let step = 1.0 / n as f64;
    GridOptimum {
        t_best: (best.1 as f64 + 0.5) * step,
        s_best: (best.2 as f64 + 0.5) * step,
        residual_inf: best.0,
        grid_step: step,
    }
}

/// All lattice points that are minima of their (periodic) 8-neighbourhood
/// with residual below `cutoff`.
pub fn lattice_local_minima(curve: &Curve, shape: &TriangleShape, n: usize, cutoff: f64) -> Vec<GridOptimum> {
    let table = lattice(curve, shape, n);
    let step = 1.0 / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = table[i][j];
            if v.is_nan() || v >= cutoff {
                continue;
            }
            let mut is_min = true;
            for di in [n - 1, 0, 1] {
                for dj in [n - 1, 0, 1] {
                    if (di, dj) != (0, 0) && table[(i + di) % n][(j + dj) % n] < v {
                        is_min = false;
                    }
                }
            }
            if is_min {
                out.push(GridOptimum {
                    t_best: (i as f64 + 0.5) * step,
                    s_best: (j as f64 + 0.5) * step,
                    residual_inf: v,
                    grid_step: step,
                });
            }
        }
    }
    out
}

/// Chebyshev parameter distance between a triangle and a lattice optimum,
/// allowing the two non-base vertices to be swapped.
pub fn lattice_distance(tri: &InscribedTriangle, opt: &GridOptimum) -> f64 {
    let direct = param_distance(tri.t_p, opt.t_best).max(param_distance(tri.t_q, opt.s_best));
    let swapped = param_distance(tri.t_p, opt.s_best).max(param_distance(tri.t_q, opt.t_best));
    direct.min(swapped)
}

/// Signed count of crossings of a ray from `base`; upward crossings (in the
/// ray's frame) count +1. The ray starts horizontal and is re-drawn at random
/// angles while it passes exactly through a vertex.
pub fn winding_by_crossing_count(path: &PlanarPath, base: Vec2) -> i64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut angle = 0.0f64;
    for _ in 0..16 {
        let (c, s) = (angle.cos(), angle.sin());
        // Rotate by −angle about base so the ray is the positive x axis.
        let local: Vec<Vec2> = path
            .points
            .iter()
            .map(|p| {
                let (dx, dy) = (p[0] - base[0], p[1] - base[1]);
                [c * dx + s * dy, -s * dx + c * dy]
            })
            .collect();
        if local.iter().any(|p| p[1] == 0.0 && p[0] > 0.0) {
            angle = rng.gen_range(0.0..std::f64::consts::TAU);
            continue;
        }
        let n = local.len();
        let mut count = 0i64;
        for k in 0..n {
            let (a, b) = (local[k], local[(k + 1) % n]);
            if (a[1] > 0.0) == (b[1] > 0.0) {
                continue;
            }
            let x = a[0] + (b[0] - a[0]) * (0.0 - a[1]) / (b[1] - a[1]);
            if x > 0.0 {
                count += if b[1] > a[1] { 1 } else { -1 };
            }
        }
        return count;
    }
    panic!("no admissible ray found after 16 attempts");
}

/// Random orthogonal matrix (Gram–Schmidt on Gaussian-ish columns) with
/// determinant +1.
pub fn random_rotation(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for r in &rows {
            let d: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(r) {
                *x -= d * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    if determinant(&rows) < 0.0 {
        rows[0].iter_mut().for_each(|x| *x = -*x);
    }
    rows
}

pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                *x -= f * p;
            }
        }
    }
    det
}

/// `x ↦ k·R·x + shift`.
pub fn similarity(curve: &Curve, rot: &[Vec<f64>], k: f64, shift: &[f64]) -> Curve {
    curve
        .map_points(|p| {
            let x = p.coords();
            let y: Vec<f64> = rot
                .iter()
                .zip(shift)
                .map(|(row, s)| k * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + s)
                .collect();
            Point::new(y).unwrap()
        })
        .unwrap()
}
