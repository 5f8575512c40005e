//! Target triangle shapes in side-ratio form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::Point;
use crate::error::{Error, Result};

/// A similarity class of triangles `△opq`, stored with
/// `r = ‖q − o‖ / ‖p − o‖ ≥ 1` and `r' = ‖q − p‖ / ‖p − o‖`.
///
/// The angle at `o` is the distinguished vertex angle θ_v. When the given
/// angles would make `r < 1`, the labels `p` and `q` are swapped so every
/// solver can assume `r ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleShape {
    pub theta_o: f64,
    pub theta_p: f64,
    pub theta_q: f64,
    pub r: f64,
    pub r_prime: f64,
    pub theta_v: f64,
}

impl TriangleShape {
    /// Angles in radians at `o`, `p`, `q`.
    pub fn from_angles(theta_o: f64, theta_p: f64, theta_q: f64) -> Result<Self> {
        let angles = [theta_o, theta_p, theta_q];
        if angles.iter().any(|a| !a.is_finite() || *a <= 0.0 || *a >= PI) {
            return Err(Error::invalid(format!(
                "triangle angles must lie strictly inside (0, π), got {angles:?}"
            )));
        }
        let sum = theta_o + theta_p + theta_q;
        if (sum - PI).abs() > 1e-9 {
            return Err(Error::invalid(format!("triangle angles sum to {sum}, not π")));
        }
        let (theta_p, theta_q) = if theta_p.sin() < theta_q.sin() {
            (theta_q, theta_p)
        } else {
            (theta_p, theta_q)
        };
        Ok(TriangleShape {
            theta_o,
            theta_p,
            theta_q,
            r: theta_p.sin() / theta_q.sin(),
            r_prime: theta_o.sin() / theta_q.sin(),
            theta_v: theta_o,
        })
    }

    pub fn from_degrees(o: f64, p: f64, q: f64) -> Result<Self> {
        Self::from_angles(o.to_radians(), p.to_radians(), q.to_radians())
    }

    pub fn equilateral() -> Self {
        Self::from_angles(PI / 3.0, PI / 3.0, PI / 3.0).expect("valid angles")
    }

    pub fn angles_degrees(&self) -> [f64; 3] {
        [
            self.theta_o.to_degrees(),
            self.theta_p.to_degrees(),
            self.theta_q.to_degrees(),
        ]
    }

    /// `(‖q−o‖/‖p−o‖ − r, ‖q−p‖/‖p−o‖ − r')`; both vanish exactly when `△opq`
    /// is similar to this shape with `o ↔ o`.
    pub fn residuals(&self, o: &Point, p: &Point, q: &Point) -> Result<(f64, f64)> {
        let scale = o.max_abs().max(p.max_abs()).max(q.max_abs());
        let base = p.distance(o);
        if base.is_nan() || base < 1e-14 * scale || base == 0.0 {
            return Err(Error::degenerate("p coincides with o"));
        }
        Ok((q.distance(o) / base - self.r, q.distance(p) / base - self.r_prime))
    }
}
