use beltrami_core::eigenbasis::{enumerate, BallDomain, EigenRecord, Operator};
use clap::Args;
use serde::Serialize;

use super::OutputArgs;
use crate::error::Result;
use crate::formats::{real, Format, IndexRecord, Sink, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OperatorArg {
    Curl,
    Graddiv,
}

impl From<OperatorArg> for Operator {
    fn from(op: OperatorArg) -> Self {
        match op {
            OperatorArg::Curl => Operator::Curl,
            OperatorArg::Graddiv => Operator::GradDiv,
        }
    }
}

/// Eigenvalue table.
#[derive(Debug, Clone, Args)]
pub struct EigsArgs {
    #[arg(long, value_enum, default_value = "curl")]
    pub operator: OperatorArg,
    #[arg(long, default_value_t = 3)]
    pub nmax: u32,
    #[arg(long, default_value_t = 3)]
    pub mmax: u32,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenRow {
    #[serde(flatten)]
    pub index: IndexRecord,
    pub eigenvalue: f64,
}

#[derive(Debug, Serialize)]
struct EigsReport<'a> {
    schema_version: u32,
    operator: String,
    radius: f64,
    n_max: u32,
    m_max: u32,
    rows: &'a [EigenRow],
}

/// Rows in `enumerate` order.
pub fn table(op: Operator, n_max: u32, m_max: u32, domain: &BallDomain) -> Result<Vec<EigenRow>> {
    enumerate(op, n_max, m_max, domain)?
        .into_iter()
        .map(|idx| {
            Ok(EigenRow {
                index: idx.into(),
                eigenvalue: EigenRecord::new(idx, *domain)?.eigenvalue(),
            })
        })
        .collect()
}

pub fn run(args: &EigsArgs) -> Result<u8> {
    let domain = BallDomain::new(args.radius)?;
    let op = Operator::from(args.operator);
    let rows = table(op, args.nmax, args.mmax, &domain)?;
    let sink = Sink::open(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => sink.csv(
            &["operator", "n", "m", "k", "sign", "eigenvalue"],
            rows.iter().map(|r| {
                vec![
                    r.index.operator.clone(),
                    r.index.n.to_string(),
                    r.index.m.to_string(),
                    r.index.k.to_string(),
                    r.index.sign.clone(),
                    real(r.eigenvalue),
                ]
            }),
        )?,
        Format::Json => sink.json(&EigsReport {
            schema_version: SCHEMA_VERSION,
            operator: op.to_string(),
            radius: args.radius,
            n_max: args.nmax,
            m_max: args.mmax,
            rows: &rows,
        })?,
    }
    Ok(crate::error::exit::SUCCESS)
}
