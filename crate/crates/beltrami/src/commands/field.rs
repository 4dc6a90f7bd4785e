use beltrami_core::ballcalc::QuadratureGrid;
use beltrami_core::eigenbasis::BallDomain;
use clap::Args;
use serde::Serialize;

use super::OutputArgs;
use crate::error::{CliError, Result};
use crate::fields::{resolve, FieldSpec, Resolved, CATALOG_VERSION};
use crate::formats::{real, Format, Sink, SCHEMA_VERSION};
use crate::parse;

/// Field samples on a cubic lattice clipped to the ball, or at quadrature nodes.
#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Basis field to sample, e.g. `curl(1,1,0,+)`. Shorthand for `--field eigen:<index>`.
    #[arg(long, conflicts_with = "field")]
    pub index: Option<String>,
    /// Any built-in field (`rigid-rotation`, `radial-gradient`, `composite`, `eigen:<index>`).
    #[arg(long)]
    pub field: Option<String>,
    /// Lattice points per axis on `[-R, R]`.
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// Sample at the nodes of this quadrature grid (`nr,ntheta,nphi`) instead of the
    /// lattice; the output is a sampled-field file.
    #[arg(long)]
    pub nodes: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Points `x_i = −R + 2R i/(n−1)` per axis that lie in the closed ball.
pub fn lattice(n: usize, radius: f64) -> Vec<[f64; 3]> {
    let coord = |i: usize| {
        if n == 1 {
            0.0
        } else {
            -radius + 2.0 * radius * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = [coord(i), coord(j), coord(k)];
                if x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= radius * radius {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// `(x, u(x))` at the requested points.
pub fn sample(args: &FieldArgs) -> Result<Vec<([f64; 3], [f64; 3])>> {
    let domain = BallDomain::new(args.radius)?;
    let spec: FieldSpec = match (&args.index, &args.field) {
        (Some(idx), None) => FieldSpec::Eigen(parse::multi_index(idx)?),
        (None, Some(f)) => f.parse()?,
        (None, None) => return Err(CliError::usage("one of --index or --field is required")),
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    };
    let norm_grid = QuadratureGrid::with_defaults(domain);
    let field = match resolve(&spec, domain, &norm_grid)? {
        Resolved::Analytic(a) => a.field,
        Resolved::Sampled(_) => {
            return Err(CliError::usage("`field` samples built-in fields only"))
        }
    };
    let points: Vec<[f64; 3]> = match &args.nodes {
        Some(text) => {
            let (a, b, c) = parse::counts(text)?;
            QuadratureGrid::new(domain, a, b, c)?
                .nodes()
                .map(|n| n.position)
                .collect()
        }
        None => lattice(args.grid, args.radius),
    };
    Ok(points.into_iter().map(|x| (x, field.eval(x))).collect())
}

#[derive(Debug, Serialize)]
struct FieldReport {
    schema_version: u32,
    catalog_version: u32,
    field: String,
    radius: f64,
    columns: [&'static str; 6],
    rows: Vec<[f64; 6]>,
}

pub const HEADER: [&str; 6] = ["x", "y", "z", "ux", "uy", "uz"];

pub fn run(args: &FieldArgs) -> Result<u8> {
    let samples = sample(args)?;
    let sink = Sink::open(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => sink.csv(
            &HEADER,
            samples
                .iter()
                .map(|(x, u)| x.iter().chain(u).map(|&v| real(v)).collect()),
        )?,
        Format::Json => sink.json(&FieldReport {
            schema_version: SCHEMA_VERSION,
            catalog_version: CATALOG_VERSION,
            field: args
                .index
                .as_ref()
                .map(|i| format!("eigen:{i}"))
                .or_else(|| args.field.clone())
                .unwrap_or_default(),
            radius: args.radius,
            columns: HEADER,
            rows: samples
                .iter()
                .map(|(x, u)| [x[0], x[1], x[2], u[0], u[1], u[2]])
                .collect(),
        })?,
    }
    Ok(crate::error::exit::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_is_clipped_to_the_ball() {
        let pts = lattice(21, 1.0);
        assert!(pts
            .iter()
            .all(|x| x.iter().map(|c| c * c).sum::<f64>() <= 1.0));
        assert!(pts.contains(&[0.0, 0.0, 1.0]));
        assert!(pts.len() < 21 * 21 * 21);
        assert!(lattice(0, 1.0).is_empty());
        assert_eq!(lattice(1, 1.0), vec![[0.0; 3]]);
    }
}
