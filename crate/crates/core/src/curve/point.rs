use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or free vector) in R^n, n ≥ 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::invalid(format!(
                "points need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("coordinate {i} is not finite")));
        }
        Ok(Point(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// Skips validation; for internal arithmetic on already-valid points.
    pub(crate) fn raw(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// The `axis`-th standard basis vector.
    pub fn basis(dim: usize, axis: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[axis] = 1.0;
        Point(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// `‖self − other‖`. Bitwise symmetric in its arguments.
    pub fn distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: f64) -> Point {
        Point(self.0.iter().map(|a| a * k).collect())
    }

    /// `self + k·dir`
    pub fn add_scaled(&self, dir: &Point, k: f64) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, d)| a + k * d).collect())
    }

    /// `a + λ(b − a)`; returns `a` exactly at λ = 0.
    pub fn lerp(a: &Point, b: &Point, lambda: f64) -> Point {
        Point(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| x + lambda * (y - x))
                .collect(),
        )
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Point(c.to_vec())
    }
}

impl From<[f64; 3]> for Point {
    fn from(c: [f64; 3]) -> Self {
        Point(c.to_vec())
    }
}

/// Distance from `x` to the closed segment `[a, b]` and the clamped
/// segment coordinate of the foot point.
pub fn point_segment_distance(x: &Point, a: &Point, b: &Point) -> (f64, f64) {
    let ab = b.sub(a);
    let len2 = ab.dot(&ab);
    let lambda = if len2 > 0.0 {
        (x.sub(a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (x.distance(&Point::lerp(a, b, lambda)), lambda)
}
