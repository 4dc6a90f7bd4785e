use std::path::PathBuf;

use beltrami_core::ballcalc::QuadratureGrid;
use beltrami_core::eigenbasis::{BallDomain, MultiIndex, Operator};
use beltrami_core::streamline::{flux_drift, flux_function, trace, StopReason, Trace};
use clap::Args;
use serde::Serialize;

use super::OutputArgs;
use crate::error::{CliError, Result};
use crate::fields::eigenfield;
use crate::formats::{real, Format, Sink, SCHEMA_VERSION};
use crate::parse;

/// Field lines of a curl eigenfield by RK4 on the unit direction field.
#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    #[arg(long, default_value = "curl(1,1,0,+)")]
    pub index: String,
    /// Seed point `x,y,z`; repeatable. Defaults to `(0,0,0.5R)` and `(0.4R,0,0.2R)`.
    #[arg(long = "seed-point", allow_hyphen_values = true)]
    pub seed_points: Vec<String>,
    /// Arc-length step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Where to write the per-trace diagnostics as JSON (CSV output only).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceDiagnostics {
    pub trace_id: usize,
    pub seed: [f64; 3],
    pub steps: usize,
    pub arc_length: f64,
    pub stop: &'static str,
    /// `max |x| + |y|` along the trace.
    pub axis_deviation: f64,
    /// `Ψ` at the seed; axisymmetric curl fields only.
    pub psi: Option<f64>,
    /// `max |Ψ − Ψ₀| / |Ψ₀|`; axisymmetric curl fields only.
    pub psi_drift: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub schema_version: u32,
    pub index: String,
    pub radius: f64,
    pub step: f64,
    pub max_steps: usize,
    pub traces: Vec<TraceDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(usize, f64, [f64; 3])>>,
}

fn stop_name(s: StopReason) -> &'static str {
    match s {
        StopReason::MaxSteps => "max-steps",
        StopReason::LeftBall => "left-ball",
        StopReason::Stagnation => "stagnation",
    }
}

pub fn run_traces(args: &TraceArgs) -> Result<(TraceReport, Vec<Trace>)> {
    let domain = BallDomain::new(args.radius)?;
    let idx: MultiIndex = parse::multi_index(&args.index)?;
    if idx.operator() != Operator::Curl {
        return Err(CliError::usage("trace expects a curl index"));
    }
    let rec = eigenfield(idx, domain, &QuadratureGrid::with_defaults(domain))?;
    let seeds: Vec<[f64; 3]> = if args.seed_points.is_empty() {
        let r = args.radius;
        vec![[0.0, 0.0, 0.5 * r], [0.4 * r, 0.0, 0.2 * r]]
    } else {
        args.seed_points
            .iter()
            .map(|s| parse::point(s))
            .collect::<Result<_>>()?
    };
    let axisymmetric = idx.k() == 0;
    let mut diags = Vec::with_capacity(seeds.len());
    let mut traces = Vec::with_capacity(seeds.len());
    for (id, seed) in seeds.into_iter().enumerate() {
        let t = trace(&rec, seed, args.step, args.max_steps, &domain)?;
        diags.push(TraceDiagnostics {
            trace_id: id,
            seed,
            steps: t.len().saturating_sub(1),
            arc_length: t.points.last().map(|p| p.0).unwrap_or(0.0),
            stop: stop_name(t.stop),
            axis_deviation: t
                .points
                .iter()
                .map(|(_, x)| x[0].abs() + x[1].abs())
                .fold(0.0, f64::max),
            psi: axisymmetric.then(|| flux_function(&rec, rec.eigenvalue(), seed)),
            psi_drift: axisymmetric.then(|| flux_drift(&rec, rec.eigenvalue(), &t)),
        });
        traces.push(t);
    }
    Ok((
        TraceReport {
            schema_version: SCHEMA_VERSION,
            index: idx.to_string(),
            radius: args.radius,
            step: args.step,
            max_steps: args.max_steps,
            traces: diags,
            points: None,
        },
        traces,
    ))
}

pub fn run(args: &TraceArgs) -> Result<u8> {
    let (mut report, traces) = run_traces(args)?;
    for d in &report.traces {
        eprintln!(
            "trace {}: {} steps, stop {}, psi drift {}",
            d.trace_id,
            d.steps,
            d.stop,
            d.psi_drift
                .map(|v| format!("{v:.3e}"))
                .unwrap_or_else(|| "n/a".into())
        );
    }
    let rows = || {
        traces
            .iter()
            .enumerate()
            .flat_map(|(id, t)| t.points.iter().map(move |&(s, x)| (id, s, x)))
    };
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            Sink::open(args.output.out.as_deref())?.csv(
                &["trace_id", "s", "x", "y", "z"],
                rows().map(|(id, s, x)| {
                    vec![id.to_string(), real(s), real(x[0]), real(x[1]), real(x[2])]
                }),
            )?;
            if let Some(path) = &args.report {
                Sink::open(Some(path))?.json(&report)?;
            }
        }
        Format::Json => {
            report.points = Some(rows().collect());
            Sink::open(args.output.out.as_deref())?.json(&report)?;
        }
    }
    Ok(crate::error::exit::SUCCESS)
}
