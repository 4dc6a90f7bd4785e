use beltrami_core::ballcalc::{
    compatibility_residuals, dirichlet_residual, gram_defect, verify_eigenpair, QuadratureGrid,
    VerifyConfig, DEFAULT_COUNTS,
};
use beltrami_core::eigenbasis::{
    enumerate, enumerate_mixed, BallDomain, MultiIndex, Operator, Sign,
};
use beltrami_core::specfun::{bessel_prime_zero, bessel_zero, phi_integral};
use beltrami_core::spectral::{
    apply_nd, apply_nd_inverse, apply_nd_shifted, apply_s, apply_s_inverse, resolvent_nd,
    scale_norm, solve_curl_power, solve_graddiv_power, synthesize_on_grid, Scale, SpectralBasis,
    SpectralCoefficients, Truncation,
};
use beltrami_core::{Error, Part};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::OutputArgs;
use crate::error::{exit, Result};
use crate::fields::eigenfield;
use crate::formats::{real, Format, Sink, SCHEMA_VERSION};
use crate::parse;

/// Tolerances of the verification suites.
pub mod tol {
    pub const EIGEN: f64 = 1e-3;
    pub const BOUNDARY_FLUX: f64 = 1e-8;
    pub const NORM: f64 = 1e-6;
    pub const GRAM: f64 = 1e-6;
    pub const DIRICHLET_INTERIOR: f64 = 1e-3;
    pub const DIRICHLET_BOUNDARY: f64 = 1e-10;
    pub const COMPATIBILITY: f64 = 1e-6;
    pub const PHI_IMAG: f64 = 1e-8;
    pub const ZERO_CONSTANT_LOW: f64 = 4.4924;
    pub const ZERO_CONSTANT_HIGH: f64 = 4.4944;
    pub const TRIVIAL_ZEROS: f64 = 1e-12;
    pub const ZERO_IDENTITY: f64 = 1e-10;
    pub const ALGEBRA: f64 = 1e-12;
    pub const PARSEVAL: f64 = 1e-5;
}

const COMPATIBILITY_POINTS: usize = 50;
const GRAM_FIELDS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Eigen,
    Basis,
    Operators,
    All,
}

/// Numerical checks of the eigenpairs, the basis and the coefficient algebra.
#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Largest `n` for the eigen suite (default: 3 for curl, 2 for grad-div).
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Largest `m` for the eigen suite (default: 3 for curl, 2 for grad-div).
    #[arg(long)]
    pub mmax: Option<u32>,
    /// Truncation `n,m` for the operator suite.
    #[arg(long, default_value = "4,4")]
    pub trunc: String,
    /// Finite-difference step as a fraction of the radius.
    #[arg(long, default_value_t = beltrami_core::ballcalc::DEFAULT_STEP)]
    pub step: f64,
    /// Finite-difference order (2, 4, 6 or 8).
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    #[arg(long, default_value_t = beltrami_core::ballcalc::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Quadrature counts `nr,ntheta,nphi`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Multiplies every eigenvalue the residuals are measured against (fault injection).
    #[arg(long, default_value_t = 1.0)]
    pub lambda_scale: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// `null` in JSON when the check could not be evaluated.
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Default)]
struct Checks {
    suite: &'static str,
    list: Vec<Check>,
}

impl Checks {
    fn at_most(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.list.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            threshold,
            passed: value <= threshold,
            error: None,
        });
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.at_most(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    fn failed(&mut self, name: impl Into<String>, threshold: f64, err: &Error) {
        self.list.push(Check {
            suite: self.suite,
            name: name.into(),
            value: f64::NAN,
            threshold,
            passed: false,
            error: Some(err.to_string()),
        });
    }

    fn record<T>(
        &mut self,
        name: impl Into<String>,
        threshold: f64,
        result: beltrami_core::Result<T>,
    ) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.failed(name, threshold, &e);
                None
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySettings {
    pub radius: f64,
    pub step: f64,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    pub grid: (usize, usize, usize),
    pub lambda_scale: f64,
    pub truncation: (u32, u32),
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub settings: VerifySettings,
    pub passed: bool,
    pub failures: usize,
    pub checks: Vec<Check>,
}

fn settings(args: &VerifyArgs) -> Result<VerifySettings> {
    Ok(VerifySettings {
        radius: args.radius,
        step: args.step,
        order: args.order,
        samples: args.samples,
        seed: args.seed,
        grid: match &args.grid {
            Some(g) => parse::counts(g)?,
            None => DEFAULT_COUNTS,
        },
        lambda_scale: args.lambda_scale,
        truncation: parse::pair(&args.trunc)?,
    })
}

fn config(s: &VerifySettings) -> VerifyConfig {
    VerifyConfig {
        samples: s.samples,
        boundary_samples: s.samples,
        step: s.step,
        order: s.order,
        seed: s.seed,
        grid: s.grid,
        eigenvalue_scale: s.lambda_scale,
    }
}

/// Eigenpair residuals for curl `n, m <= curl_max` and grad-div `n, m <= graddiv_max`.
fn eigen_suite(
    s: &VerifySettings,
    curl_max: (u32, u32),
    graddiv_max: (u32, u32),
    out: &mut Vec<Check>,
) -> Result<()> {
    let domain = BallDomain::new(s.radius)?;
    let grid = QuadratureGrid::new(domain, s.grid.0, s.grid.1, s.grid.2)?;
    let cfg = config(s);
    let mut c = Checks {
        suite: "eigen",
        ..Default::default()
    };
    let mut indices = enumerate(Operator::Curl, curl_max.0, curl_max.1, &domain)?;
    if graddiv_max.1 > 0 {
        indices.extend(enumerate(
            Operator::GradDiv,
            graddiv_max.0,
            graddiv_max.1,
            &domain,
        )?);
    }
    for idx in indices {
        let Some(rec) = c.record(
            format!("{idx} normalization"),
            tol::NORM,
            eigenfield(idx, domain, &grid),
        ) else {
            continue;
        };
        let Some(r) = c.record(
            format!("{idx} eigen residual"),
            tol::EIGEN,
            verify_eigenpair(&rec, &cfg),
        ) else {
            continue;
        };
        c.at_most(
            format!("{idx} eigen residual"),
            r.eigen_residual,
            tol::EIGEN,
        );
        if let Some(d) = r.div_residual {
            c.at_most(format!("{idx} div residual"), d, tol::EIGEN);
        }
        if let Some(d) = r.rot_residual {
            c.at_most(format!("{idx} rot residual"), d, tol::EIGEN);
        }
        c.at_most(
            format!("{idx} boundary flux"),
            r.boundary_flux,
            tol::BOUNDARY_FLUX,
        );
        c.at_most(format!("{idx} norm defect"), r.gram_defect, tol::NORM);
    }
    out.extend(c.list);
    Ok(())
}

fn basis_suite(s: &VerifySettings, out: &mut Vec<Check>) -> Result<()> {
    let domain = BallDomain::new(s.radius)?;
    let grid = QuadratureGrid::new(domain, s.grid.0, s.grid.1, s.grid.2)?;
    let cfg = config(s);
    let mut c = Checks {
        suite: "basis",
        ..Default::default()
    };

    let rho = bessel_zero(1, 1)?;
    c.at_most(
        "first zero of psi_1 within [4.4924, 4.4944]",
        if (tol::ZERO_CONSTANT_LOW..=tol::ZERO_CONSTANT_HIGH).contains(&rho) {
            0.0
        } else {
            (rho - 4.4934).abs()
        },
        0.0,
    );
    let mut worst = 0.0f64;
    for m in 1..=10 {
        worst = worst.max((bessel_zero(0, m)? - m as f64 * std::f64::consts::PI).abs());
    }
    c.at_most(
        "zeros of psi_0 equal m*pi (m <= 10)",
        worst,
        tol::TRIVIAL_ZEROS,
    );
    c.at_most(
        "first zero of psi_0' equals first zero of psi_1",
        (bessel_prime_zero(0, 1)? - rho).abs(),
        tol::ZERO_IDENTITY,
    );

    for &(n, m) in &[(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
        let z = bessel_zero(n, m)?;
        let name = format!("Im Phi_{n} at zero ({n},{m})");
        if let Some(v) = c.record(
            name.clone(),
            tol::PHI_IMAG,
            phi_integral(n, z / s.radius, s.radius),
        ) {
            c.at_most(name, v.im.abs(), tol::PHI_IMAG);
        }
    }

    let mixed = enumerate_mixed(2, 2, &domain)?;
    let records: Vec<_> = mixed
        .iter()
        .take(GRAM_FIELDS)
        .map(|&idx| eigenfield(idx, domain, &grid))
        .collect::<beltrami_core::Result<_>>()?;
    c.at_most(
        format!("gram defect of first {} mixed basis fields", records.len()),
        gram_defect(&records, &grid),
        tol::GRAM,
    );

    let mut bad = 0usize;
    for op in [Operator::Curl, Operator::GradDiv] {
        let list = enumerate(op, 3, 3, &domain)?;
        let n0 = if op == Operator::Curl { 1 } else { 0 };
        for n in n0..=3u32 {
            for m in 1..=3u32 {
                let signs = if op == Operator::Curl { 2 } else { 1 };
                let count = list.iter().filter(|i| i.n() == n && i.m() == m).count();
                if count != signs * (2 * n as usize + 1) {
                    bad += 1;
                }
            }
        }
    }
    c.at_most("multiplicity 2n+1 mismatches", bad as f64, 0.0);

    for idx in enumerate(Operator::Curl, 2, 2, &domain)? {
        let rec = eigenfield(idx, domain, &grid)?;
        let name = format!("{idx} dirichlet interior");
        if let Some(d) = c.record(
            name.clone(),
            tol::DIRICHLET_INTERIOR,
            dirichlet_residual(&rec, &cfg),
        ) {
            c.at_most(name, d.interior, tol::DIRICHLET_INTERIOR);
            c.at_most(
                format!("{idx} dirichlet boundary"),
                d.boundary,
                tol::DIRICHLET_BOUNDARY,
            );
        }
    }

    for (n, m, k) in [(1, 1, 0), (2, 1, 1)] {
        for sign in [Sign::Plus, Sign::Minus] {
            let idx = MultiIndex::curl(n, m, k, sign)?;
            let rec = eigenfield(idx, domain, &grid)?;
            let name = format!("{idx} compatibility radial");
            if let Some(r) = c.record(
                name.clone(),
                tol::COMPATIBILITY,
                compatibility_residuals(&rec, COMPATIBILITY_POINTS, s.seed),
            ) {
                c.at_most(name, r.radial, tol::COMPATIBILITY);
                c.at_most(
                    format!("{idx} compatibility angular"),
                    r.angular,
                    tol::COMPATIBILITY,
                );
            }
        }
    }
    out.extend(c.list);
    Ok(())
}

/// Seeded values in `[-1, 1]` on the chosen part, zero elsewhere.
pub fn random_coefficients(
    basis: &SpectralBasis,
    part: Option<Part>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> SpectralCoefficients {
    let mut c = basis.zeros();
    let chosen: Vec<MultiIndex> = basis
        .records()
        .map(|r| r.index())
        .filter(|i| match part {
            None => true,
            Some(Part::Potential) => i.operator() == Operator::GradDiv,
            Some(Part::Vortex) => i.operator() == Operator::Curl,
        })
        .take(count)
        .collect();
    for idx in chosen {
        c.set(&idx, rng.gen_range(-1.0..=1.0))
            .expect("index from the same basis");
    }
    c
}

fn operators_suite(s: &VerifySettings, out: &mut Vec<Check>) -> Result<()> {
    let domain = BallDomain::new(s.radius)?;
    let grid = QuadratureGrid::new(domain, s.grid.0, s.grid.1, s.grid.2)?;
    let truncation = Truncation::new(s.truncation.0, s.truncation.1)?;
    let basis = SpectralBasis::new(domain, truncation, &grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut c = Checks {
        suite: "operators",
        ..Default::default()
    };
    let v = random_coefficients(&basis, Some(Part::Potential), usize::MAX, &mut rng);
    let w = random_coefficients(&basis, Some(Part::Vortex), usize::MAX, &mut rng);

    for p in 1..=3 {
        let back = apply_nd(&apply_nd_inverse(&v, p)?, p)?;
        c.at_most(
            format!("Nd^{p} after Nd^-{p}"),
            back.max_abs_diff(&v)?,
            tol::ALGEBRA,
        );
        let back = apply_s_inverse(&apply_s(&w, p)?, p)?;
        c.at_most(
            format!("S^-{p} after S^{p}"),
            back.max_abs_diff(&w)?,
            tol::ALGEBRA,
        );
    }
    for k in 1..=2 {
        let sol = solve_graddiv_power(&v, k)?;
        c.at_most(
            format!("graddiv power 2k={} residual", 2 * k),
            sol.residual,
            tol::ALGEBRA,
        );
        let own = scale_norm(&sol.u, Scale::A, 2 * k as i32).value;
        c.at_most(
            format!("A^{} norm of solution equals M_{}", 2 * k, 2 * k),
            (own - sol.dual_norm.value).abs() / sol.dual_norm.value,
            tol::ALGEBRA,
        );
        let sol = solve_curl_power(&w, k)?;
        c.at_most(
            format!("curl power 2m={} residual", 2 * k),
            sol.residual,
            tol::ALGEBRA,
        );
    }
    for lambda in [1.0, -10.0] {
        let back = apply_nd_shifted(&resolvent_nd(&v, lambda)?, lambda)?;
        c.at_most(
            format!("(Nd + {lambda}) after resolvent"),
            back.max_abs_diff(&v)?,
            tol::ALGEBRA,
        );
    }
    let g = MultiIndex::graddiv(1, 1, 0)?;
    let nu2 = -basis.record(&g).map(|r| r.eigenvalue()).unwrap_or(f64::NAN);
    c.holds(
        "resolvent at -nu^2 of graddiv(1,1,0) raises spectrum collision",
        matches!(resolvent_nd(&v, -nu2), Err(Error::SpectrumCollision { .. })),
    );
    c.holds(
        "Nd on a vector with a vortex part raises a domain error",
        matches!(
            apply_nd(&v.add(&w)?, 1),
            Err(Error::Domain {
                part: Part::Vortex,
                ..
            })
        ),
    );

    let u = apply_nd_inverse(&v, 1)?;
    let c2 = v
        .a()
        .iter()
        .map(|t| 1.0 + 1.0 / (-t.eigenvalue))
        .fold(0.0, f64::max);
    c.at_most(
        "|Nd^-1 f|^2_A2 / (c_1^2 |f|^2)",
        scale_norm(&u, Scale::A, 2).value.powi(2) / (c2 * v.norm().powi(2)),
        1.0,
    );
    let pairing: f64 = u
        .a()
        .iter()
        .zip(v.a())
        .map(|(x, y)| x.value * y.value)
        .sum();
    c.at_most(
        "|(u, v)| / (|u|_A2 |v|_A-2)",
        pairing.abs() / (scale_norm(&u, Scale::A, 2).value * scale_norm(&v, Scale::A, -2).value),
        1.0,
    );

    let all = v.add(&w)?;
    let energy = synthesize_on_grid(&all, &basis, &grid)?.norm(&grid).powi(2);
    let sum = all.norm().powi(2);
    c.at_most(
        "Parseval relative defect",
        (energy - sum).abs() / sum,
        tol::PARSEVAL,
    );
    out.extend(c.list);
    Ok(())
}

pub fn report(args: &VerifyArgs) -> Result<VerifyReport> {
    let s = settings(args)?;
    let mut checks = Vec::new();
    let (curl_max, graddiv_max) = match (args.nmax, args.mmax) {
        (None, None) => ((3, 3), (2, 2)),
        (n, m) => {
            let n = n.unwrap_or(3);
            let m = m.unwrap_or(3);
            ((n, m), (n, m))
        }
    };
    if matches!(args.suite, Suite::Eigen | Suite::All) {
        eigen_suite(&s, curl_max, graddiv_max, &mut checks)?;
    }
    if matches!(args.suite, Suite::Basis | Suite::All) {
        basis_suite(&s, &mut checks)?;
    }
    if matches!(args.suite, Suite::Operators | Suite::All) {
        operators_suite(&s, &mut checks)?;
    }
    let failures = checks.iter().filter(|c| !c.passed).count();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite: args.suite,
        settings: s,
        passed: failures == 0,
        failures,
        checks,
    })
}

pub fn run(args: &VerifyArgs) -> Result<u8> {
    let report = report(args)?;
    eprintln!(
        "verify: {}/{} checks passed",
        report.checks.len() - report.failures,
        report.checks.len()
    );
    let sink = Sink::open(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(
            &["suite", "name", "value", "threshold", "passed"],
            report.checks.iter().map(|c| {
                vec![
                    c.suite.to_string(),
                    c.name.clone(),
                    real(c.value),
                    real(c.threshold),
                    c.passed.to_string(),
                ]
            }),
        )?,
    }
    Ok(if report.passed {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}
