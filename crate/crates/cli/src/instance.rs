//! Instance files.
//!
//! ```toml
//! polygon = [[0, 0], [3, 0], [3, 3], [0, 3]]
//!
//! [start]
//! point = [1.5, 1.5]
//! heading_radians = 0.0
//!
//! [tolerance]   # optional
//! len = 1e-9
//! angle = 1e-9
//! band = 1e-6
//! ```

use std::path::Path;

use dubreach::{Configuration, ConvexPolygon, Point, ReachError, Tolerance};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub polygon: Vec<[f64; 2]>,
    pub start: StartSpec,
    #[serde(default)]
    pub tolerance: Option<ToleranceSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartSpec {
    pub point: [f64; 2],
    pub heading_radians: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    pub len: Option<f64>,
    pub angle: Option<f64>,
    pub band: Option<f64>,
}

/// Command-line adjustments applied on top of the file.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Multiplies every input coordinate. A vehicle with turning radius `R`
    /// is posed with `scale = 1 / R`.
    pub scale: f64,
    /// Overrides both `len` and `angle`.
    pub tol: Option<f64>,
    pub band: Option<f64>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { scale: 1.0, tol: None, band: None }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub polygon: ConvexPolygon,
    pub start: Configuration,
}

impl Instance {
    pub fn tolerance(&self) -> &Tolerance {
        self.polygon.tolerance()
    }
}

pub fn parse_instance(text: &str, opts: &LoadOptions) -> Result<Instance, CliError> {
    let file: InstanceFile = toml::from_str(text).map_err(|e| CliError::input(format!("ParseError: {e}")))?;
    build_instance(&file, opts)
}

pub fn load_instance(path: &Path, opts: &LoadOptions) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("ReadError: {}: {e}", path.display())))?;
    parse_instance(&text, opts)
}

pub fn build_instance(file: &InstanceFile, opts: &LoadOptions) -> Result<Instance, CliError> {
    if !(opts.scale.is_finite() && opts.scale > 0.0) {
        return Err(CliError::input("InvalidScale: --scale must be a positive finite number".to_string()));
    }
    let mut tol = Tolerance::default();
    if let Some(t) = &file.tolerance {
        tol.len = t.len.unwrap_or(tol.len);
        tol.angle = t.angle.unwrap_or(tol.angle);
        tol.band = t.band.unwrap_or(tol.band);
    }
    if let Some(t) = opts.tol {
        tol.len = t;
        tol.angle = t;
    }
    if let Some(b) = opts.band {
        tol.band = b;
    }
    let k = opts.scale;
    let vertices = file.polygon.iter().map(|&[x, y]| Point::new(x * k, y * k)).collect();
    let polygon = ConvexPolygon::with_tolerance(vertices, tol)?;
    let [x, y] = file.start.point;
    let heading = file.start.heading_radians;
    if !heading.is_finite() {
        return Err(ReachError::InvalidDirection.into());
    }
    let start = Configuration::from_angle(Point::new(x * k, y * k), heading);
    if !start.point.is_finite() {
        return Err(ReachError::CoordinateOutOfRange.into());
    }
    if !polygon.contains_point(start.point) {
        return Err(ReachError::StartOutsidePolygon.into());
    }
    Ok(Instance { polygon, start })
}
