use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{generate, Curve, Generator};
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 4096;

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

/// How a curve is described on disk or on the command line.
///
/// JSON forms:
/// `{"dimension": 2, "points": [[0,0],[1,0],[1,1],[0,1]]}` or
/// `{"generator": "ellipse", "params": {"a": 2.0, "b": 1.0}, "samples": 4096}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Points {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dimension: Option<usize>,
        points: Vec<Vec<f64>>,
    },
    Generator {
        generator: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve JSON: {e}")))
    }

    /// Parses the `gen:name,key=value,...` shorthand. `samples=N` sets the
    /// sample count; every other key is a generator parameter.
    pub fn from_shorthand(text: &str) -> Result<Self> {
        let body = text
            .strip_prefix("gen:")
            .ok_or_else(|| Error::Parse(format!("generator shorthand must start with gen:, got {text:?}")))?;
        let mut parts = body.split(',');
        let name = parts.next().unwrap_or_default().trim().to_string();
        if name.is_empty() {
            return Err(Error::Parse("generator shorthand has no name".into()));
        }
        let mut params = BTreeMap::new();
        let mut samples = DEFAULT_SAMPLES;
        for part in parts.map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let value: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("value of {k} is not a number: {v:?}")))?;
            if k.trim() == "samples" {
                if value < 0.0 || value.fract() != 0.0 {
                    return Err(Error::Parse(format!("samples must be a positive integer, got {v}")));
                }
                samples = value as usize;
            } else {
                params.insert(k.trim().to_string(), value);
            }
        }
        Ok(CurveSpec::Generator {
            generator: name,
            params,
            samples,
        })
    }

    pub fn build(&self) -> Result<Curve> {
        match self {
            CurveSpec::Points { dimension, points } => {
                if let Some(n) = dimension {
                    if let Some(i) = points.iter().position(|p| p.len() != *n) {
                        return Err(Error::invalid(format!(
                            "point {i} has {} coordinates, declared dimension is {n}",
                            points[i].len()
                        )));
                    }
                }
                Curve::from_coords(points)
            }
            CurveSpec::Generator {
                generator,
                params,
                samples,
            } => generate(Generator::from_name(generator, params)?, *samples),
        }
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String {
        match self {
            CurveSpec::Points { points, .. } => format!("points ({} vertices)", points.len()),
            CurveSpec::Generator {
                generator,
                params,
                samples,
            } => {
                let mut s = format!("gen:{generator}");
                for (k, v) in params {
                    s.push_str(&format!(",{k}={v}"));
                }
                s.push_str(&format!(",samples={samples}"));
                s
            }
        }
    }
}
