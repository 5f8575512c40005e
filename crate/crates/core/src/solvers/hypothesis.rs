use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};

/// Grid estimates of `sup Θ_δ` (angles between chords from `o` to two points
/// just after `o`) and `inf Θ'_δ` (one point just before `o`, one just after).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaBounds {
    pub delta: f64,
    pub sup_theta: f64,
    pub inf_theta_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleConditionReport {
    pub delta: f64,
    pub sup_theta: f64,
    pub inf_theta_prime: f64,
    pub theta_v: f64,
    pub satisfied: bool,
}

impl ThetaBounds {
    pub fn with_theta_v(self, theta_v: f64) -> AngleConditionReport {
        AngleConditionReport {
            delta: self.delta,
            sup_theta: self.sup_theta,
            inf_theta_prime: self.inf_theta_prime,
            theta_v,
            satisfied: check_hypothesis(&self, theta_v),
        }
    }
}

/// Angle between two vectors, stable for nearly parallel and antiparallel
/// inputs: `2·atan2(‖û − v̂‖, ‖û + v̂‖)`.
pub(crate) fn angle_between(u: &Point, v: &Point) -> f64 {
    let (nu, nv) = (u.norm(), v.norm());
    let a = u.scale(1.0 / nu);
    let b = v.scale(1.0 / nv);
    2.0 * a.distance(&b).atan2(a.add(&b).norm())
}

/// Evaluates chord angles on a `samples × samples` grid with half-step
/// offsets, so the open interval endpoints are never sampled.
pub fn estimate_theta_bounds(curve: &Curve, delta: f64, samples: usize) -> Result<ThetaBounds> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::invalid(format!("delta must lie in (0, 0.5), got {delta}")));
    }
    if samples < 8 {
        return Err(Error::invalid(format!("need at least 8 samples, got {samples}")));
    }
    let o = curve.base();
    let scale = curve.diameter();
    let chords = |start: f64| -> Result<Vec<Point>> {
        (0..samples)
            .map(|i| {
                let t = start + delta * (i as f64 + 0.5) / samples as f64;
                let v = curve.eval(t).sub(o);
                if v.norm() <= 1e-14 * scale {
                    Err(Error::degenerate(format!("curve revisits the base point at t = {t}")))
                } else {
                    Ok(v)
                }
            })
            .collect()
    };
    let after = chords(0.0)?;
    let before = chords(1.0 - delta)?;
    let mut sup_theta: f64 = 0.0;
    for (i, u) in after.iter().enumerate() {
        for v in &after[i + 1..] {
            sup_theta = sup_theta.max(angle_between(u, v));
        }
    }
    let mut inf_theta_prime = std::f64::consts::PI;
    for u in &before {
        for v in &after {
            inf_theta_prime = inf_theta_prime.min(angle_between(u, v));
        }
    }
    Ok(ThetaBounds {
        delta,
        sup_theta,
        inf_theta_prime,
    })
}

/// `sup Θ < θ_v < inf Θ'`
pub fn check_hypothesis(bounds: &ThetaBounds, theta_v: f64) -> bool {
    bounds.sup_theta < theta_v && theta_v < bounds.inf_theta_prime
}
