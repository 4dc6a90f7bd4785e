use beltrami_core::ballcalc::{sample_field, GridField, QuadratureGrid, DEFAULT_COUNTS};
use beltrami_core::eigenbasis::BallDomain;
use beltrami_core::spectral::{
    analyze, analyze_sampled, project_a, project_v, synthesize_on_grid, SpectralBasis,
    SpectralCoefficients, Truncation,
};
use clap::Args;
use serde::Serialize;

use super::OutputArgs;
use crate::error::Result;
use crate::fields::{resolve, FieldSpec, Resolved, CATALOG_VERSION};
use crate::formats::{term_row, Format, Sink, TermRecord, SCHEMA_VERSION, TERM_HEADER};
use crate::parse;

/// Helmholtz–Weyl split of a field into potential and vortex expansions.
#[derive(Debug, Clone, Args)]
pub struct ProjectArgs {
    /// `rigid-rotation`, `radial-gradient`, `composite`, `eigen:<index>` or `file:<path>`.
    #[arg(long)]
    pub field: String,
    /// Truncation `n,m`.
    #[arg(long, default_value = "4,4")]
    pub trunc: String,
    /// Quadrature counts `nr,ntheta,nphi`; sampled-field files must match them.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Energies {
    /// `‖f‖²` by quadrature.
    pub total: f64,
    /// `Σ a²`.
    pub potential: f64,
    /// `Σ b²`.
    pub vortex: f64,
}

/// `L₂` errors; the part errors need a field whose split is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Errors {
    /// `‖f − P_A f − P_V f‖`.
    pub reconstruction: f64,
    /// `reconstruction / ‖f‖`.
    pub relative_reconstruction: f64,
    /// `‖P_A f − f_A‖`.
    pub potential: Option<f64>,
    /// `‖P_V f − f_V‖`.
    pub vortex: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectReport {
    pub schema_version: u32,
    pub catalog_version: u32,
    pub field: String,
    pub radius: f64,
    pub truncation: (u32, u32),
    pub grid: (usize, usize, usize),
    pub energy: Energies,
    pub errors: Errors,
    pub coefficients: Vec<TermRecord>,
    #[serde(skip)]
    pub raw: Option<SpectralCoefficients>,
}

fn energy(terms: &[beltrami_core::spectral::Term]) -> f64 {
    terms.iter().map(|t| t.value * t.value).sum()
}

/// Projects `spec` onto the truncated basis on `grid`.
pub fn project(
    spec: &FieldSpec,
    domain: BallDomain,
    truncation: Truncation,
    counts: (usize, usize, usize),
) -> Result<ProjectReport> {
    let grid = QuadratureGrid::new(domain, counts.0, counts.1, counts.2)?;
    let basis = SpectralBasis::new(domain, truncation, &grid)?;
    let resolved = resolve(spec, domain, &grid)?;
    let (coeffs, samples, parts): (_, GridField, _) = match &resolved {
        Resolved::Analytic(a) => {
            let c = analyze(&*a.field, &basis, &grid)?;
            let parts = a
                .parts
                .as_ref()
                .map(|(p, v)| (sample_field(&**p, &grid), sample_field(&**v, &grid)));
            (c, sample_field(&*a.field, &grid), parts)
        }
        Resolved::Sampled(s) => (analyze_sampled(s, &basis, &grid)?, s.clone(), None),
    };
    let pa = synthesize_on_grid(&project_a(&coeffs), &basis, &grid)?;
    let pv = synthesize_on_grid(&project_v(&coeffs), &basis, &grid)?;
    let mut rebuilt = pa.clone();
    rebuilt.add_scaled(&pv, 1.0);
    let total = samples.norm(&grid);
    let reconstruction = samples.sub(&rebuilt).norm(&grid);
    let errors = Errors {
        reconstruction,
        relative_reconstruction: if total > 0.0 {
            reconstruction / total
        } else {
            0.0
        },
        potential: parts.as_ref().map(|(p, _)| pa.sub(p).norm(&grid)),
        vortex: parts.as_ref().map(|(_, v)| pv.sub(v).norm(&grid)),
    };
    Ok(ProjectReport {
        schema_version: SCHEMA_VERSION,
        catalog_version: CATALOG_VERSION,
        field: spec.to_string(),
        radius: domain.radius(),
        truncation: (truncation.n_max(), truncation.m_max()),
        grid: counts,
        energy: Energies {
            total: total * total,
            potential: energy(coeffs.a()),
            vortex: energy(coeffs.b()),
        },
        errors,
        coefficients: coeffs.terms().map(TermRecord::from).collect(),
        raw: Some(coeffs),
    })
}

pub fn run(args: &ProjectArgs) -> Result<u8> {
    let spec: FieldSpec = args.field.parse()?;
    let (n, m) = parse::pair(&args.trunc)?;
    let counts = match &args.grid {
        Some(g) => parse::counts(g)?,
        None => DEFAULT_COUNTS,
    };
    let report = project(
        &spec,
        BallDomain::new(args.radius)?,
        Truncation::new(n, m)?,
        counts,
    )?;
    eprintln!(
        "project: reconstruction error {:.3e} (relative {:.3e})",
        report.errors.reconstruction, report.errors.relative_reconstruction
    );
    let sink = Sink::open(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(&TERM_HEADER, report.coefficients.iter().map(term_row))?,
    }
    Ok(crate::error::exit::SUCCESS)
}
