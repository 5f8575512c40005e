use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Curve, Point};
use crate::error::{Error, Result};

/// Analytic curve families. Each is sampled uniformly in its own angle or
/// arc parameter; the resulting polyline is then re-parameterized by chord
/// length. Every generator starts (parameter 0) at its designated base point.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Circle of the given radius about the origin, starting at `(radius, 0)`.
    Circle { radius: f64 },
    /// Axis-aligned ellipse, starting at `(a, 0)`.
    Ellipse { a: f64, b: f64 },
    /// Circle in the 2-plane of R^dim spanned by `(1,−1,0,…)/√2` and
    /// `(1,1,−2,0,…)/√6`; for dim = 3 that is the plane x + y + z = 0.
    TiltedCircle { dim: usize, radius: f64 },
    /// Trefoil knot in R³.
    Trefoil { scale: f64 },
    /// Regular polygon with `sides` corners on the circle of `radius`.
    Polygon { sides: usize, radius: f64 },
    /// Pie slice with its apex at the origin: two straight arms of length
    /// `arm` meeting at `angle_deg`, closed by a circular arc.
    CornerWedge { angle_deg: f64, arm: f64 },
    /// Narrow chevron whose arms fold back on the same side of the apex.
    UTurn { angle_deg: f64, arm: f64 },
    /// Smooth star-shaped curve with seeded random Fourier coefficients; the
    /// extra coordinates (dim > 2) are seeded Fourier series as well.
    Fourier {
        seed: u64,
        dim: usize,
        harmonics: usize,
        amplitude: f64,
    },
}

pub const GENERATOR_NAMES: &[&str] = &[
    "circle",
    "ellipse",
    "tilted_circle_nd",
    "trefoil",
    "polygon",
    "corner_wedge",
    "u_turn",
    "fourier",
];

impl Generator {
    pub fn from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        let get = |key: &str, default: f64| -> Result<f64> {
            match params.get(key) {
                Some(v) if v.is_finite() => Ok(*v),
                Some(_) => Err(Error::invalid(format!("parameter {key} is not finite"))),
                None => Ok(default),
            }
        };
        let count = |key: &str, default: usize| -> Result<usize> {
            let v = get(key, default as f64)?;
            if v < 0.0 || v.fract() != 0.0 {
                return Err(Error::invalid(format!("parameter {key} must be a non-negative integer")));
            }
            Ok(v as usize)
        };
        let known: &[&str] = match name {
            "circle" => &["radius"],
            "ellipse" => &["a", "b"],
            "tilted_circle_nd" => &["n", "radius"],
            "trefoil" => &["scale"],
            "polygon" => &["sides", "radius"],
            "corner_wedge" | "u_turn" => &["angle", "arm"],
            "fourier" => &["seed", "n", "harmonics", "amplitude"],
            _ => {
                return Err(Error::invalid(format!(
                    "unknown generator {name:?} (expected one of {})",
                    GENERATOR_NAMES.join(", ")
                )))
            }
        };
        if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::invalid(format!("generator {name} has no parameter {k:?}")));
        }
        let gen = match name {
            "circle" => Generator::Circle { radius: get("radius", 1.0)? },
            "ellipse" => Generator::Ellipse {
                a: get("a", 2.0)?,
                b: get("b", 1.0)?,
            },
            "tilted_circle_nd" => Generator::TiltedCircle {
                dim: count("n", 3)?,
                radius: get("radius", 1.0)?,
            },
            "trefoil" => Generator::Trefoil { scale: get("scale", 1.0)? },
            "polygon" => Generator::Polygon {
                sides: count("sides", 6)?,
                radius: get("radius", 1.0)?,
            },
            "corner_wedge" => Generator::CornerWedge {
                angle_deg: get("angle", 90.0)?,
                arm: get("arm", 1.0)?,
            },
            "u_turn" => Generator::UTurn {
                angle_deg: get("angle", 30.0)?,
                arm: get("arm", 1.0)?,
            },
            "fourier" => Generator::Fourier {
                seed: count("seed", 0)? as u64,
                dim: count("n", 2)?,
                harmonics: count("harmonics", 4)?,
                amplitude: get("amplitude", 0.15)?,
            },
            _ => unreachable!(),
        };
        Ok(gen)
    }
}

/// Samples `gen` with `samples` vertices (≥ 16).
pub fn generate(gen: Generator, samples: usize) -> Result<Curve> {
    if samples < 16 {
        return Err(Error::invalid(format!("generators need at least 16 samples, got {samples}")));
    }
    let positive = |name: &str, v: f64| -> Result<()> {
        if v > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(format!("{name} must be positive, got {v}")))
        }
    };
    let angle = |k: usize| TAU * k as f64 / samples as f64;
    let points: Vec<Point> = match gen {
        Generator::Circle { radius } => {
            positive("radius", radius)?;
            (0..samples)
                .map(|k| Point::raw(vec![radius * angle(k).cos(), radius * angle(k).sin()]))
                .collect()
        }
        Generator::Ellipse { a, b } => {
            positive("a", a)?;
            positive("b", b)?;
            (0..samples)
                .map(|k| Point::raw(vec![a * angle(k).cos(), b * angle(k).sin()]))
                .collect()
        }
        Generator::TiltedCircle { dim, radius } => {
            if dim < 3 {
                return Err(Error::invalid("tilted_circle_nd needs n >= 3"));
            }
            positive("radius", radius)?;
            let mut u = vec![0.0; dim];
            let mut v = vec![0.0; dim];
            u[0] = 1.0 / 2f64.sqrt();
            u[1] = -1.0 / 2f64.sqrt();
            v[0] = 1.0 / 6f64.sqrt();
            v[1] = 1.0 / 6f64.sqrt();
            v[2] = -2.0 / 6f64.sqrt();
            (0..samples)
                .map(|k| {
                    let (c, s) = (radius * angle(k).cos(), radius * angle(k).sin());
                    Point::raw(u.iter().zip(&v).map(|(ui, vi)| c * ui + s * vi).collect())
                })
                .collect()
        }
        Generator::Trefoil { scale } => {
            positive("scale", scale)?;
            (0..samples)
                .map(|k| {
                    let t = angle(k);
                    Point::raw(vec![
                        scale * (t.sin() + 2.0 * (2.0 * t).sin()),
                        scale * (t.cos() - 2.0 * (2.0 * t).cos()),
                        scale * -(3.0 * t).sin(),
                    ])
                })
                .collect()
        }
        Generator::Polygon { sides, radius } => {
            if sides < 3 {
                return Err(Error::invalid("polygon needs at least 3 sides"));
            }
            positive("radius", radius)?;
            let corner = |j: usize| {
                let a = TAU * (j % sides) as f64 / sides as f64;
                Point::raw(vec![radius * a.cos(), radius * a.sin()])
            };
            (0..samples)
                .map(|k| {
                    let pos = k as f64 * sides as f64 / samples as f64;
                    let j = pos.floor() as usize;
                    Point::lerp(&corner(j), &corner(j + 1), pos - j as f64)
                })
                .collect()
        }
        Generator::CornerWedge { angle_deg, arm } | Generator::UTurn { angle_deg, arm } => {
            if !(angle_deg > 0.0 && angle_deg < 180.0) {
                return Err(Error::invalid(format!(
                    "wedge angle must lie in (0, 180) degrees, got {angle_deg}"
                )));
            }
            positive("arm", arm)?;
            wedge(angle_deg.to_radians(), arm, samples)
        }
        Generator::Fourier {
            seed,
            dim,
            harmonics,
            amplitude,
        } => {
            if dim < 2 {
                return Err(Error::invalid("fourier needs n >= 2"));
            }
            if !(0.0..0.5).contains(&amplitude) {
                return Err(Error::invalid("fourier amplitude must lie in [0, 0.5)"));
            }
            fourier(seed, dim, harmonics.max(1), amplitude, samples)
        }
    };
    Curve::new(points)
}

fn wedge(opening: f64, arm: f64, samples: usize) -> Vec<Point> {
    let arc_len = opening * arm;
    let total = 2.0 * arm + arc_len;
    let n_arm = ((samples as f64 * arm / total).round() as usize).max(2);
    let n_arc = samples.saturating_sub(2 * n_arm).max(2);
    let dir = |a: f64| [a.cos(), a.sin()];
    let u1 = dir(-opening / 2.0);
    let u2 = dir(opening / 2.0);
    let mut pts = Vec::with_capacity(2 * n_arm + n_arc);
    for i in 0..n_arm {
        let s = arm * i as f64 / n_arm as f64;
        pts.push(Point::raw(vec![s * u1[0], s * u1[1]]));
    }
    for j in 0..n_arc {
        let a = -opening / 2.0 + opening * j as f64 / n_arc as f64;
        pts.push(Point::raw(vec![arm * a.cos(), arm * a.sin()]));
    }
    for i in 0..n_arm {
        let s = arm * (1.0 - i as f64 / n_arm as f64);
        pts.push(Point::raw(vec![s * u2[0], s * u2[1]]));
    }
    pts
}

fn fourier(seed: u64, dim: usize, harmonics: usize, amplitude: f64, samples: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Coefficient magnitudes decay like 1/k²; their total stays below
    // `amplitude` so the radial function is positive (star-shaped, simple).
    let norm = 6.0 / (PI * PI) / 2.0;
    let series = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
        (1..=harmonics)
            .map(|k| {
                let w = amplitude * norm / (k * k) as f64;
                (w * rng.gen_range(-1.0..1.0), w * rng.gen_range(-1.0..1.0))
            })
            .collect()
    };
    let radial = series(&mut rng);
    let lifts: Vec<Vec<(f64, f64)>> = (2..dim).map(|_| series(&mut rng)).collect();
    let eval = |coef: &[(f64, f64)], t: f64| -> f64 {
        coef.iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let k = (i + 1) as f64;
                a * (k * t).cos() + b * (k * t).sin()
            })
            .sum()
    };
    (0..samples)
        .map(|k| {
            let t = TAU * k as f64 / samples as f64;
            let r = 1.0 + eval(&radial, t);
            let mut c = vec![r * t.cos(), r * t.sin()];
            c.extend(lifts.iter().map(|l| eval(l, t)));
            Point::raw(c)
        })
        .collect()
}
