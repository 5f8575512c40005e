//! JSON run reports written by the command-line tool.
//!
//! Triangle parameters in a report refer to the *input* curve: a parameter
//! `t` on the base-relocated curve is reported as `(t + base) mod 1`.

use serde::{Deserialize, Serialize};

use crate::curve::{wrap, Curve, Point};
use crate::shape::TriangleShape;
use crate::solvers::{AngleConditionReport, Bracket, EquilateralSolution, GridSample, InscribedTriangle, SweepResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    NoResult,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub source: String,
    pub dimension: usize,
    pub vertex_count: usize,
    pub base_param: f64,
}

impl InputSummary {
    pub fn new(source: &str, curve: &Curve, base_param: f64) -> Self {
        InputSummary {
            source: source.to_string(),
            dimension: curve.dimension(),
            vertex_count: curve.vertex_count(),
            base_param,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeSummary {
    pub angles_deg: [f64; 3],
    pub r: f64,
    pub r_prime: f64,
    pub theta_v: f64,
}

impl From<&TriangleShape> for ShapeSummary {
    fn from(s: &TriangleShape) -> Self {
        ShapeSummary {
            angles_deg: s.angles_degrees(),
            r: s.r,
            r_prime: s.r_prime,
            theta_v: s.theta_v,
        }
    }
}

/// A triangle with vertex parameters on the input curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub base_param: f64,
    pub t_p: f64,
    pub t_q: f64,
    pub point_o: Point,
    pub point_p: Point,
    pub point_q: Point,
    pub residual_r: f64,
    pub residual_r_prime: f64,
}

impl TriangleReport {
    pub fn from_relocated(tri: &InscribedTriangle, base_param: f64) -> Self {
        TriangleReport {
            base_param,
            t_p: wrap(tri.t_p + base_param),
            t_q: wrap(tri.t_q + base_param),
            point_o: tri.point_o.clone(),
            point_p: tri.point_p.clone(),
            point_q: tri.point_q.clone(),
            residual_r: tri.residual_r,
            residual_r_prime: tri.residual_r_prime,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub grid_size: usize,
    pub t_near: f64,
    pub t_far: f64,
    pub epsilon: Option<f64>,
    pub bracket: Option<Bracket>,
    pub brackets: Vec<Bracket>,
    pub invariants: Vec<GridSample>,
}

impl From<&SweepResult> for SweepReport {
    fn from(s: &SweepResult) -> Self {
        SweepReport {
            grid_size: s.grid.len(),
            t_near: s.t_near,
            t_far: s.t_far,
            epsilon: Some(s.epsilon),
            bracket: s.bracket,
            brackets: s.brackets.clone(),
            invariants: s.grid.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilateralReport {
    pub s_star: f64,
    pub t_star: f64,
    pub s1: f64,
    pub s2: f64,
    pub epsilon: f64,
    pub strongly_monotone: bool,
    pub loop_winding: i64,
}

impl From<&EquilateralSolution> for EquilateralReport {
    fn from(s: &EquilateralSolution) -> Self {
        EquilateralReport {
            s_star: s.s_star,
            t_star: s.t_star,
            s1: s.s1,
            s2: s.s2,
            epsilon: s.epsilon,
            strongly_monotone: s.monotone,
            loop_winding: s.loop_winding,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub epsilon: f64,
    pub samples: usize,
    pub strongly_monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub status: RunStatus,
    pub input: Option<InputSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shape: Option<ShapeSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hypothesis: Option<AngleConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub monotone: Option<MonotoneReport>,
    pub triangles: Vec<TriangleReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sweep: Option<SweepReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equilateral: Option<EquilateralReport>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            status: RunStatus::Ok,
            input: None,
            shape: None,
            hypothesis: None,
            monotone: None,
            triangles: Vec::new(),
            sweep: None,
            equilateral: None,
            diagnostics: Vec::new(),
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports contain only finite data");
        s.push('\n');
        s
    }
}
