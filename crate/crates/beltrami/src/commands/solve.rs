use beltrami_core::ballcalc::{QuadratureGrid, DEFAULT_COUNTS};
use beltrami_core::eigenbasis::BallDomain;
use beltrami_core::spectral::{
    solve_curl_power, solve_graddiv_power, Scale, SpectralBasis, SpectralCoefficients, Truncation,
};
use beltrami_core::Part;
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::verify::random_coefficients;
use super::OutputArgs;
use crate::error::{exit, CliError, Result};
use crate::formats::{term_row, Format, Sink, TermRecord, SCHEMA_VERSION, TERM_HEADER};
use crate::parse;

/// Largest accepted coefficient residual, relative to `max(1, max|v|)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    /// `(∇div)^{2k} u = v`.
    Graddiv,
    /// `rot^{2m} u = v`.
    Curl,
}

/// Diagonal solve of a power equation in coefficient space.
#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub equation: Equation,
    /// `k` for grad-div, `m` for curl; the operator power is twice this.
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    /// `random:<count>` or `;`-separated `<index>[=<value>]` terms, e.g.
    /// `graddiv(1,1,0)=2;graddiv(0,1,0)`.
    #[arg(long)]
    pub rhs: String,
    /// Truncation `n,m`.
    #[arg(long, default_value = "2,2")]
    pub trunc: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualNorm {
    pub scale: &'static str,
    pub order: i32,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub equation: Equation,
    pub power: u32,
    pub seed: u64,
    pub radius: f64,
    pub truncation: (u32, u32),
    pub dual_norm: DualNorm,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub rhs: Vec<TermRecord>,
    pub solution: Vec<TermRecord>,
}

/// Builds the right-hand side from its text form.
pub fn parse_rhs(
    text: &str,
    basis: &SpectralBasis,
    part: Part,
    seed: u64,
) -> Result<SpectralCoefficients> {
    if let Some(count) = text.strip_prefix("random:") {
        let count: usize = count
            .parse()
            .map_err(|_| CliError::usage(format!("bad count in `{text}`")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(random_coefficients(basis, Some(part), count, &mut rng));
    }
    let mut c = basis.zeros();
    for term in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (idx, value) = match term.split_once('=') {
            Some((i, v)) => (
                i,
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::usage(format!("bad value in `{term}`")))?,
            ),
            None => (term, 1.0),
        };
        let idx = parse::multi_index(idx)?;
        c.set(&idx, value)
            .map_err(|_| CliError::usage(format!("{idx} is outside the truncation")))?;
    }
    Ok(c)
}

pub fn solve(args: &SolveArgs) -> Result<SolveReport> {
    let (n, m) = parse::pair(&args.trunc)?;
    let domain = BallDomain::new(args.radius)?;
    let truncation = Truncation::new(n, m)?;
    let grid = QuadratureGrid::new(domain, DEFAULT_COUNTS.0, DEFAULT_COUNTS.1, DEFAULT_COUNTS.2)?;
    let basis = SpectralBasis::new(domain, truncation, &grid)?;
    let part = match args.equation {
        Equation::Graddiv => Part::Potential,
        Equation::Curl => Part::Vortex,
    };
    let v = parse_rhs(&args.rhs, &basis, part, args.seed)?;
    let sol = match args.equation {
        Equation::Graddiv => solve_graddiv_power(&v, args.power)?,
        Equation::Curl => solve_curl_power(&v, args.power)?,
    };
    let scale = v.terms().map(|t| t.value.abs()).fold(1.0, f64::max);
    let passed = sol.residual <= RESIDUAL_TOLERANCE * scale;
    Ok(SolveReport {
        schema_version: SCHEMA_VERSION,
        equation: args.equation,
        power: args.power,
        seed: args.seed,
        radius: args.radius,
        truncation: (n, m),
        dual_norm: DualNorm {
            scale: match sol.dual_norm.scale {
                Scale::A => "A",
                Scale::W => "W",
            },
            order: sol.dual_norm.order,
            value: sol.dual_norm.value,
        },
        residual: sol.residual,
        tolerance: RESIDUAL_TOLERANCE * scale,
        passed,
        rhs: v
            .terms()
            .filter(|t| t.value != 0.0)
            .map(TermRecord::from)
            .collect(),
        solution: sol
            .u
            .terms()
            .filter(|t| t.value != 0.0)
            .map(TermRecord::from)
            .collect(),
    })
}

pub fn run(args: &SolveArgs) -> Result<u8> {
    let report = solve(args)?;
    eprintln!(
        "solve: dual norm {:.6e}, residual {:.3e}",
        report.dual_norm.value, report.residual
    );
    let sink = Sink::open(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(&TERM_HEADER, report.solution.iter().map(term_row))?,
    }
    Ok(if report.passed {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}
