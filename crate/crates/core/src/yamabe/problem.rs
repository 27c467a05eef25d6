use std::f64::consts::PI;

use serde::Deserialize;

use super::{GridField, PeriodicGrid, YamabeError, YamabeProblem};

/// Named scalar-curvature generators on the unit torus.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SourceSpec {
    /// S ≡ value.
    Constant { value: f64 },
    /// S = mean + amplitude·sin(2π(kx·x + ky·y)).
    Sine {
        mean: f64,
        amplitude: f64,
        #[serde(default = "one")]
        kx: i32,
        #[serde(default)]
        ky: i32,
    },
    /// S = −nΔv for v = amplitude·sin(2πx)cos(2πy), the curvature of the flat
    /// torus seen through the conformal factor e^{v}. The solution is f = v.
    Synthetic { amplitude: f64 },
}

fn one() -> i32 {
    1
}

impl SourceSpec {
    pub fn sample(&self, grid: &PeriodicGrid, dim: usize) -> GridField {
        match *self {
            SourceSpec::Constant { value } => GridField::constant(grid.resolution(), value),
            SourceSpec::Sine { mean, amplitude, kx, ky } => {
                grid.sample(|x, y| mean + amplitude * (2.0 * PI * (kx as f64 * x + ky as f64 * y)).sin())
            }
            SourceSpec::Synthetic { amplitude } => {
                // Δv = −8π² v for this band-limited v.
                let n = dim as f64;
                grid.sample(|x, y| n * 8.0 * PI * PI * synthetic_v(amplitude, x, y))
            }
        }
    }
}

/// v = a·sin(2πx)cos(2πy).
pub fn synthetic_v(amplitude: f64, x: f64, y: f64) -> f64 {
    amplitude * (2.0 * PI * x).sin() * (2.0 * PI * y).cos()
}

/// A problem as read from a TOML file:
///
/// ```toml
/// grid = 64
/// dim = 2
/// tolerance = 1e-9
/// max_iter = 200
///
/// [source]
/// kind = "sine"
/// mean = -1.0
/// amplitude = 0.3
/// ```
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YamabeProblemFile {
    pub grid: usize,
    pub dim: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    pub source: SourceSpec,
}

fn default_tolerance() -> f64 {
    1e-9
}

fn default_max_iter() -> usize {
    200
}

impl YamabeProblemFile {
    pub fn parse(text: &str) -> Result<Self, YamabeError> {
        toml::from_str(text).map_err(|e| YamabeError::Problem(e.to_string()))
    }

    pub fn build(&self) -> Result<(PeriodicGrid, YamabeProblem), YamabeError> {
        if self.dim == 0 {
            return Err(YamabeError::InvalidDimension);
        }
        let grid = PeriodicGrid::new(self.grid)?;
        let scalar = self.source.sample(&grid, self.dim);
        let problem = YamabeProblem { scalar, dim: self.dim, tolerance: self.tolerance, max_iter: self.max_iter };
        Ok((grid, problem))
    }
}
