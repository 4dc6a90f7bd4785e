//! Named test fields and the sampled-field file format.
//!
//! Built-in fields (catalog version [`CATALOG_VERSION`]), in Cartesian components:
//!
//! | name              | field                     | potential part | vortex part   |
//! |-------------------|---------------------------|----------------|---------------|
//! | `rigid-rotation`  | `(−y, x, 0)`              | 0              | all           |
//! | `radial-gradient` | `∇|x|² = 2x`              | all            | 0             |
//! | `composite`       | sum of the two above      | `2x`           | `(−y, x, 0)`  |
//! | `eigen:<index>`   | normalized basis field    | by kind        | by kind       |
//! | `file:<path>`     | samples at grid nodes     | unknown        | unknown       |
//!
//! A sampled-field file is CSV with header `x,y,z,ux,uy,uz` and one row per node of
//! the quadrature grid, in node order (radius outermost, then polar angle, then
//! azimuth). Positions must match the nodes to `1e-9·R`.

use std::fs::File;
use std::path::{Path, PathBuf};

use beltrami_core::ballcalc::{GridField, QuadratureGrid};
use beltrami_core::eigenbasis::{
    normalize, to_spherical, BallDomain, EigenRecord, MultiIndex, Operator, SphericalPoint,
    SphericalVector,
};
use beltrami_core::VectorField;

use crate::error::{CliError, Result};
use crate::parse;

pub const CATALOG_VERSION: u32 = 1;

/// Tolerance on node positions read from a sampled-field file, relative to `R`.
pub const NODE_POSITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    RigidRotation,
    RadialGradient,
    Composite,
    Eigen(MultiIndex),
    File(PathBuf),
}

impl std::str::FromStr for FieldSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rigid-rotation" => FieldSpec::RigidRotation,
            "radial-gradient" => FieldSpec::RadialGradient,
            "composite" => FieldSpec::Composite,
            _ => {
                if let Some(idx) = s.strip_prefix("eigen:") {
                    FieldSpec::Eigen(parse::multi_index(idx)?)
                } else if let Some(path) = s.strip_prefix("file:") {
                    FieldSpec::File(PathBuf::from(path))
                } else {
                    return Err(CliError::usage(format!(
                        "unknown field `{s}`; expected rigid-rotation, radial-gradient, \
                         composite, eigen:<index> or file:<path>"
                    )));
                }
            }
        })
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::RigidRotation => f.write_str("rigid-rotation"),
            FieldSpec::RadialGradient => f.write_str("radial-gradient"),
            FieldSpec::Composite => f.write_str("composite"),
            FieldSpec::Eigen(idx) => write!(f, "eigen:{idx}"),
            FieldSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

pub fn rigid_rotation(x: [f64; 3]) -> [f64; 3] {
    [-x[1], x[0], 0.0]
}

pub fn radial_gradient(x: [f64; 3]) -> [f64; 3] {
    [2.0 * x[0], 2.0 * x[1], 2.0 * x[2]]
}

pub fn composite(x: [f64; 3]) -> [f64; 3] {
    let (a, b) = (radial_gradient(x), rigid_rotation(x));
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn zero(_: [f64; 3]) -> [f64; 3] {
    [0.0; 3]
}

/// A field given by a formula, with its potential and vortex parts when known.
pub struct Analytic {
    pub field: Box<dyn VectorField>,
    pub parts: Option<(Box<dyn VectorField>, Box<dyn VectorField>)>,
}

pub enum Resolved {
    Analytic(Analytic),
    Sampled(GridField),
}

/// Builds the field named by `spec`; files are read against `grid`.
pub fn resolve(spec: &FieldSpec, domain: BallDomain, grid: &QuadratureGrid) -> Result<Resolved> {
    let analytic = |field: Box<dyn VectorField>,
                    potential: Box<dyn VectorField>,
                    vortex: Box<dyn VectorField>| {
        Resolved::Analytic(Analytic {
            field,
            parts: Some((potential, vortex)),
        })
    };
    Ok(match spec {
        FieldSpec::RigidRotation => analytic(
            Box::new(rigid_rotation),
            Box::new(zero),
            Box::new(rigid_rotation),
        ),
        FieldSpec::RadialGradient => analytic(
            Box::new(radial_gradient),
            Box::new(radial_gradient),
            Box::new(zero),
        ),
        FieldSpec::Composite => analytic(
            Box::new(composite),
            Box::new(radial_gradient),
            Box::new(rigid_rotation),
        ),
        FieldSpec::Eigen(idx) => {
            let rec = eigenfield(*idx, domain, grid)?;
            match idx.operator() {
                Operator::GradDiv => analytic(Box::new(rec), Box::new(rec), Box::new(zero)),
                Operator::Curl => analytic(Box::new(rec), Box::new(zero), Box::new(rec)),
            }
        }
        FieldSpec::File(path) => Resolved::Sampled(read_samples(path, grid)?),
    })
}

/// The unit-norm basis field `idx`.
pub fn eigenfield(
    idx: MultiIndex,
    domain: BallDomain,
    grid: &QuadratureGrid,
) -> beltrami_core::Result<EigenRecord> {
    normalize(&EigenRecord::new(idx, domain)?, grid)
}

#[derive(Debug, serde::Deserialize)]
struct SampleRow {
    x: f64,
    y: f64,
    z: f64,
    ux: f64,
    uy: f64,
    uz: f64,
}

/// Reads a sampled-field file written for `grid`.
pub fn read_samples(path: &Path, grid: &QuadratureGrid) -> Result<GridField> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let bad = |message: String| CliError::Format {
        path: path.to_owned(),
        message,
    };
    let mut reader = csv::Reader::from_reader(std::io::BufReader::new(file));
    let mut values = Vec::with_capacity(grid.len());
    let mut nodes = grid.nodes();
    let tol = NODE_POSITION_TOLERANCE * grid.radius();
    for (i, row) in reader.deserialize::<SampleRow>().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let node = nodes
            .next()
            .ok_or_else(|| bad(format!("more rows than the {} grid nodes", grid.len())))?;
        let x = [row.x, row.y, row.z];
        if (0..3).any(|j| (x[j] - node.position[j]).abs() > tol) {
            return Err(bad(format!(
                "row {} is not at grid node {:?}",
                i + 1,
                node.position
            )));
        }
        let u = [row.ux, row.uy, row.uz];
        if u.iter().any(|c| !c.is_finite()) {
            return Err(bad(format!("row {} has a non-finite component", i + 1)));
        }
        let p = SphericalPoint::new(node.r, node.theta, node.phi)?;
        values.push(to_spherical(SphericalVector::cartesian(u), p)?.components);
    }
    if values.len() != grid.len() {
        return Err(bad(format!(
            "{} rows, expected one per grid node ({})",
            values.len(),
            grid.len()
        )));
    }
    Ok(GridField::from_values(values))
}
