//! Candidate spheres `tri(o, p)`, the scaled isometries that carry them onto
//! the canonical sphere `{‖x‖ = 1, x_n = 0}`, and the cylindrical projection.

use serde::{Deserialize, Serialize};

use crate::curve::Point;
use crate::error::{Error, Result};
use crate::shape::TriangleShape;

/// Below this value of `normal · e_n` the normal is treated as antiparallel
/// to `e_n` and a half-turn is applied first.
const ANTIPARALLEL_TOL: f64 = 1e-8;
const ORTHO_TOL: f64 = 1e-10;

/// The (n−2)-sphere `{x : ‖x − center‖ = radius, ⟨x − center, normal⟩ = 0}`.
/// For n = 2 this is a pair of points.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere {
    pub center: Point,
    pub radius: f64,
    pub normal: Point,
}

/// The set of third vertices `q` making `△opq` similar to `shape`: the
/// intersection of the spheres of radius `r·D` about `o` and `r'·D` about `p`,
/// where `D = ‖p − o‖`.
pub fn tri_sphere(o: &Point, p: &Point, shape: &TriangleShape) -> Result<Sphere> {
    if o.dim() != p.dim() {
        return Err(Error::invalid("o and p have different dimensions"));
    }
    let axis = p.sub(o);
    let d = axis.norm();
    if d == 0.0 {
        return Err(Error::degenerate("p coincides with o"));
    }
    let r1 = shape.r * d;
    let r2 = shape.r_prime * d;
    let alpha = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d * d);
    let rho2 = r1 * r1 - alpha * alpha * d * d;
    if rho2.is_nan() || rho2 <= 0.0 {
        return Err(Error::InfeasibleShape(format!(
            "sphere radius² = {rho2} is not positive"
        )));
    }
    Ok(Sphere {
        center: o.add_scaled(&axis, alpha),
        radius: rho2.sqrt(),
        normal: axis.scale(1.0 / d),
    })
}

impl Sphere {
    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Euclidean distance from `x` to the sphere.
    pub fn distance_to(&self, x: &Point) -> f64 {
        let rel = x.sub(&self.center);
        let h = rel.dot(&self.normal);
        let radial = rel.add_scaled(&self.normal, -h).norm();
        (h * h + (radial - self.radius).powi(2)).sqrt()
    }

    /// Orthonormal basis of the hyperplane orthogonal to `normal`.
    pub fn tangent_basis(&self) -> Vec<Point> {
        let n = self.dim();
        let mut basis: Vec<Point> = Vec::with_capacity(n - 1);
        let mut candidates: Vec<Point> = (0..n).map(|i| Point::basis(n, i)).collect();
        // Try the axes least aligned with the normal first.
        candidates.sort_by(|a, b| a.dot(&self.normal).abs().total_cmp(&b.dot(&self.normal).abs()));
        for c in candidates {
            let mut v = c.add_scaled(&self.normal, -c.dot(&self.normal));
            for b in &basis {
                v = v.add_scaled(b, -v.dot(b));
            }
            let len = v.norm();
            if len > 1e-6 {
                basis.push(v.scale(1.0 / len));
            }
            if basis.len() == n - 1 {
                break;
            }
        }
        basis
    }

    /// The sphere point in direction `coeffs` (length n−1, not all zero)
    /// expressed in [`Sphere::tangent_basis`].
    pub fn point_at(&self, coeffs: &[f64]) -> Point {
        let basis = self.tangent_basis();
        let len = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let mut x = self.center.clone();
        for (b, c) in basis.iter().zip(coeffs) {
            x = x.add_scaled(b, self.radius * c / len);
        }
        x
    }
}

/// An n×n rotation matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    n: usize,
    m: Vec<f64>,
}

impl Rotation {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        Rotation { n, m }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.m[i * self.n..(i + 1) * self.n].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn compose(&self, other: &Rotation) -> Rotation {
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
            }
        }
        Rotation { n, m }
    }

    /// Largest entry of `RᵀR − I`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn frobenius_distance(&self, other: &Rotation) -> f64 {
        self.m.iter().zip(&other.m).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Determinant by Gaussian elimination (test helper scale: n ≤ 16).
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.m.clone();
        let mut det = 1.0;
        for c in 0..n {
            let piv = (c..n).max_by(|&i, &j| a[i * n + c].abs().total_cmp(&a[j * n + c].abs())).unwrap();
            if a[piv * n + c] == 0.0 {
                return 0.0;
            }
            if piv != c {
                for k in 0..n {
                    a.swap(piv * n + k, c * n + k);
                }
                det = -det;
            }
            det *= a[c * n + c];
            for i in c + 1..n {
                let f = a[i * n + c] / a[c * n + c];
                for k in c..n {
                    a[i * n + k] -= f * a[c * n + k];
                }
            }
        }
        det
    }

    /// The rotation in the plane of unit vectors `a` and `b` that carries `a`
    /// onto `b`: `I + K + K²/(1 + a·b)` with `K = b aᵀ − a bᵀ`.
    /// Requires `a·b > −1`.
    fn between(a: &[f64], b: &[f64]) -> Rotation {
        let n = a.len();
        let c: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let mut k = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                k[i * n + j] = b[i] * a[j] - a[i] * b[j];
            }
        }
        let mut m = Rotation::identity(n).m;
        for i in 0..n {
            for j in 0..n {
                let k2: f64 = (0..n).map(|l| k[i * n + l] * k[l * n + j]).sum();
                m[i * n + j] += k[i * n + j] + k2 / (1.0 + c);
            }
        }
        Rotation { n, m }
    }

    /// Half-turn in the (e_1, e_n) plane.
    fn half_turn(n: usize) -> Rotation {
        let mut r = Rotation::identity(n);
        r.m[0] = -1.0;
        r.m[n * n - 1] = -1.0;
        r
    }

    /// Modified Gram–Schmidt on the rows.
    fn reorthonormalize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in 0..i {
                let d: f64 = (0..n).map(|k| self.m[i * n + k] * self.m[j * n + k]).sum();
                for k in 0..n {
                    self.m[i * n + k] -= d * self.m[j * n + k];
                }
            }
            let len = (0..n).map(|k| self.m[i * n + k].powi(2)).sum::<f64>().sqrt();
            for k in 0..n {
                self.m[i * n + k] /= len;
            }
        }
    }
}

/// `x ↦ scale · rotation · (x + translation)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledIsometry {
    pub rotation: Rotation,
    pub translation: Point,
    pub scale: f64,
}

impl ScaledIsometry {
    pub fn identity(n: usize) -> Self {
        ScaledIsometry {
            rotation: Rotation::identity(n),
            translation: Point::zeros(n),
            scale: 1.0,
        }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        if x.dim() != self.rotation.dim() {
            return Err(Error::invalid(format!(
                "point of dimension {} given to a frame of dimension {}",
                x.dim(),
                self.rotation.dim()
            )));
        }
        Ok(self.apply_unchecked(x.coords()))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Point {
        let shifted: Vec<f64> = x.iter().zip(self.translation.coords()).map(|(a, b)| a + b).collect();
        Point::raw(self.rotation.apply(&shifted).into_iter().map(|v| v * self.scale).collect())
    }
}

/// Frame carrying `sphere` onto the canonical sphere: translate its center to
/// the origin, rotate its normal onto `e_n` (minimal rotation; half-turn in the
/// (e_1, e_n) plane first when the normal is antiparallel to `e_n`), and scale
/// by `1 / radius`.
pub fn build_frame(sphere: &Sphere) -> ScaledIsometry {
    let n = sphere.dim();
    let en = Point::basis(n, n - 1);
    let a = sphere.normal.coords();
    let mut rotation = if sphere.normal.dot(&en) > -1.0 + ANTIPARALLEL_TOL {
        Rotation::between(a, en.coords())
    } else {
        let flip = Rotation::half_turn(n);
        let flipped = flip.apply(a);
        Rotation::between(&flipped, en.coords()).compose(&flip)
    };
    rotation.reorthonormalize();
    debug_assert!(rotation.orthogonality_error() < ORTHO_TOL);
    ScaledIsometry {
        rotation,
        translation: sphere.center.scale(-1.0),
        scale: 1.0 / sphere.radius,
    }
}

pub fn apply_frame(frame: &ScaledIsometry, x: &Point) -> Result<Point> {
    frame.apply(x)
}

/// Image of a point under the cylindrical projection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPoint {
    /// Distance from the x_n axis.
    pub d: f64,
    /// Last coordinate.
    pub h: f64,
}

impl ProjectedPoint {
    pub fn to_array(self) -> [f64; 2] {
        [self.d, self.h]
    }
}

/// `(x_1, …, x_n) ↦ (√(x_1² + … + x_{n−1}²), x_n)`
pub fn project_p(x: &Point) -> ProjectedPoint {
    project_coords(x.coords())
}

pub(crate) fn project_coords(x: &[f64]) -> ProjectedPoint {
    let (head, last) = x.split_at(x.len() - 1);
    ProjectedPoint {
        d: head.iter().map(|c| c * c).sum::<f64>().sqrt(),
        h: last[0],
    }
}
