//! Minimal deterministic SVG 1.1 output for planar curves, triangles and
//! ratio paths. Coordinates are written with fixed precision so identical
//! input gives identical bytes.

use std::fmt::Write as _;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::frames::project_coords;
use crate::winding::{PlanarPath, Vec2};

const CANVAS: f64 = 800.0;
const PADDING: f64 = 24.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec2>,
    pub closed: bool,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mark {
    pub at: Vec2,
    pub label: String,
}

/// Polylines and labelled point marks in world coordinates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub polylines: Vec<Polyline>,
    pub marks: Vec<Mark>,
}

impl Scene {
    pub fn polyline(&mut self, points: Vec<Vec2>, closed: bool, class: &str) -> &mut Self {
        self.polylines.push(Polyline { points, closed, class: class.to_string() });
        self
    }

    pub fn mark(&mut self, at: Vec2, label: &str) -> &mut Self {
        self.marks.push(Mark { at, label: label.to_string() });
        self
    }

    pub fn render(&self) -> String {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        let all = self
            .polylines
            .iter()
            .flat_map(|p| p.points.iter())
            .chain(self.marks.iter().map(|m| &m.at));
        for p in all {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if !lo[0].is_finite() {
            lo = [0.0, 0.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let k = (CANVAS - 2.0 * PADDING) / span;
        let width = (hi[0] - lo[0]) * k + 2.0 * PADDING;
        let height = (hi[1] - lo[1]) * k + 2.0 * PADDING;
        let map = |p: &Vec2| -> (f64, f64) { ((p[0] - lo[0]) * k + PADDING, (hi[1] - p[1]) * k + PADDING) };

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
        );
        out.push_str("<style>polyline{fill:none;stroke-width:1.5}.curve{stroke:#1f4e9c}.triangle{stroke:#c0392b}.ratio-path{stroke:#27773a}circle{fill:#222}text{font:12px sans-serif}</style>\n");
        for line in &self.polylines {
            let mut pts: Vec<String> = line
                .points
                .iter()
                .map(|p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            if line.closed && !pts.is_empty() {
                pts.push(pts[0].clone());
            }
            let _ = writeln!(out, "<polyline class=\"{}\" points=\"{}\"/>", line.class, pts.join(" "));
        }
        for m in &self.marks {
            let (x, y) = map(&m.at);
            let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\"/>");
            if !m.label.is_empty() {
                let _ = writeln!(out, "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>", x + 5.0, y - 5.0, escape(&m.label));
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Planar coordinates of a point: itself in 2-D, its cylindrical projection
/// `(|x₁..x_{n−1}|, x_n)` when `project` is set, otherwise an error.
pub fn to_plane(coords: &[f64], project: bool) -> Result<Vec2> {
    match (coords.len(), project) {
        (2, false) => Ok([coords[0], coords[1]]),
        (_, true) => Ok(project_coords(coords).to_array()),
        (n, false) => Err(Error::invalid(format!(
            "cannot plot a {n}-dimensional curve; pass --project to apply the cylindrical projection first"
        ))),
    }
}

pub fn curve_to_plane(curve: &Curve, project: bool) -> Result<Vec<Vec2>> {
    curve.vertices().iter().map(|p| to_plane(p.coords(), project)).collect()
}

/// Curve (closed polyline), base point mark, and optionally a triangle drawn
/// as one closed polyline with its vertices marked.
pub fn curve_scene(curve: &Curve, triangle: Option<[&[f64]; 3]>, project: bool) -> Result<Scene> {
    let mut scene = Scene::default();
    scene.polyline(curve_to_plane(curve, project)?, true, "curve");
    scene.mark(to_plane(curve.base().coords(), project)?, "o");
    if let Some(vs) = triangle {
        let pts = vs.iter().map(|v| to_plane(v, project)).collect::<Result<Vec<_>>>()?;
        scene.polyline(pts.clone(), true, "triangle");
        scene.mark(pts[1], "p").mark(pts[2], "q");
    }
    Ok(scene)
}

/// An open ratio path with its endpoints marked.
pub fn ratio_path_scene(path: &PlanarPath, s: f64) -> Scene {
    let mut scene = Scene::default();
    scene.polyline(path.points.clone(), path.closed, "ratio-path");
    if let (Some(first), Some(last)) = (path.points.first(), path.points.last()) {
        scene.mark(*first, "(-1,0)").mark(*last, "(0,-1)");
    }
    scene.mark([0.0, 0.0], &format!("origin, s = {s}"));
    scene
}
