use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sample_eigenfield, Differencer, GridField, QuadratureGrid, DEFAULT_COUNTS};
use crate::eigenbasis::{BallDomain, EigenRecord, MultiIndex, Operator};
use crate::error::{Error, Result};
use crate::field::{dot, norm, scale, sub, VectorField};
use crate::specfun::k_apply;

/// Default number of random interior sample points.
pub const DEFAULT_SAMPLES: usize = 200;

/// Sample points where `|u|` falls below this are skipped by relative residuals.
pub const SMALL_FIELD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Interior sample points.
    pub samples: usize,
    /// Points on the sphere `r = R` for the normal-flux check.
    pub boundary_samples: usize,
    /// Finite-difference step as a fraction of the radius.
    pub step: f64,
    /// Finite-difference order: 2, 4, 6 or 8.
    pub order: usize,
    pub seed: u64,
    /// Quadrature counts for the norm check.
    pub grid: (usize, usize, usize),
    /// Multiplies the eigenvalue the residual is measured against; 1 except when
    /// injecting a fault.
    pub eigenvalue_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            boundary_samples: DEFAULT_SAMPLES,
            step: super::DEFAULT_STEP,
            order: 6,
            seed: 0,
            grid: DEFAULT_COUNTS,
            eigenvalue_scale: 1.0,
        }
    }
}

/// Residual diagnostics for one eigenpair. All values are non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub index: MultiIndex,
    pub eigenvalue: f64,
    /// `sup|rot u − λu| / sup|u|` (curl) or `sup|∇div v − μv| / sup|μv|` (grad-div).
    pub eigen_residual: f64,
    /// `sup|div u| / sup|u|`, curl fields only.
    pub div_residual: Option<f64>,
    /// `sup|rot v| / sup|v|`, grad-div fields only.
    pub rot_residual: Option<f64>,
    /// `max |u_r|` over boundary samples.
    pub boundary_flux: f64,
    /// `|‖u‖² − 1|` on the quadrature grid.
    pub gram_defect: f64,
    /// Absolute finite-difference step.
    pub h: f64,
    pub order: usize,
    pub seed: u64,
    /// Interior points actually used (small-field points excluded).
    pub samples: usize,
    pub grid: (usize, usize, usize),
}

fn check_config(config: &VerifyConfig) -> Result<()> {
    if config.samples == 0 {
        return Err(Error::InvalidConfig("sample budget must be positive"));
    }
    if !(config.step > 0.0 && config.step < 0.1) {
        return Err(Error::InvalidConfig("step must lie in (0, 0.1) radii"));
    }
    if !config.eigenvalue_scale.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn uniform_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> [f64; 3] {
    loop {
        let x = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let r2 = dot(x, x);
        if r2 < 1.0 {
            return scale(x, radius);
        }
    }
}

fn uniform_on_sphere(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    (cos_theta.acos(), rng.gen_range(0.0..2.0 * PI))
}

/// Radius of the region whose points keep the whole stencil inside the ball.
fn interior_radius(fd: &Differencer, domain: &BallDomain) -> Result<f64> {
    let r = domain.radius() - fd.reach();
    if r <= 0.0 {
        return Err(Error::Stencil {
            reach: fd.reach(),
            radius: domain.radius(),
        });
    }
    Ok(r * (1.0 - 1e-12))
}

/// Checks `rot u = λu, div u = 0` (curl) or `∇div v = μv, rot v = 0` (grad-div) by
/// finite differences at seeded random interior points, the normal component on
/// the boundary, and the quadrature norm.
pub fn verify_eigenpair(rec: &EigenRecord, config: &VerifyConfig) -> Result<ResidualReport> {
    check_config(config)?;
    let domain = rec.domain();
    let h = config.step * domain.radius();
    let fd = Differencer::new(h, config.order, domain)?;
    let inner = interior_radius(&fd, &domain)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let target = rec.eigenvalue() * config.eigenvalue_scale;
    let curl_kind = rec.index().operator() == Operator::Curl;

    let (mut sup_u, mut sup_eig, mut sup_aux, mut used) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    for _ in 0..config.samples {
        let x = uniform_in_ball(&mut rng, inner);
        let u = rec.eval(x);
        if norm(u) < SMALL_FIELD {
            continue;
        }
        used += 1;
        sup_u = sup_u.max(norm(u));
        let applied = if curl_kind {
            sup_aux = sup_aux.max(fd.div(rec, x)?.abs());
            fd.curl(rec, x)?
        } else {
            sup_aux = sup_aux.max(norm(fd.curl(rec, x)?));
            fd.graddiv(rec, x)?
        };
        sup_eig = sup_eig.max(norm(sub(applied, scale(u, target))));
    }
    let rel = |v: f64, d: f64| if d > 0.0 { v / d } else { 0.0 };
    let (eigen_residual, div_residual, rot_residual) = if curl_kind {
        (rel(sup_eig, sup_u), Some(rel(sup_aux, sup_u)), None)
    } else {
        (
            rel(sup_eig, sup_u * target.abs()),
            None,
            Some(rel(sup_aux, sup_u)),
        )
    };

    let mut boundary_flux = 0.0f64;
    for _ in 0..config.boundary_samples {
        let (theta, phi) = uniform_on_sphere(&mut rng);
        let v = rec.eval_spherical(domain.radius(), theta, phi);
        boundary_flux = boundary_flux.max(v[0].abs());
    }

    let (a, b, c) = config.grid;
    let grid = QuadratureGrid::new(domain, a, b, c)?;
    let s = sample_eigenfield(rec, &grid);
    let gram_defect = (s.dot(&s, &grid) - 1.0).abs();

    Ok(ResidualReport {
        index: rec.index(),
        eigenvalue: target,
        eigen_residual,
        div_residual,
        rot_residual,
        boundary_flux,
        gram_defect,
        h,
        order: config.order,
        seed: config.seed,
        samples: used,
        grid: config.grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletReport {
    /// `sup|Δv + λ²v| / sup|λ²v|` for `v = r u_r`.
    pub interior: f64,
    /// `max |v|` on `r = R`.
    pub boundary: f64,
}

/// The radial component of a curl eigenfield solves the Dirichlet problem
/// `−Δv = λ²v`, `v|_{r=R} = 0` with `v = r u_r`.
pub fn dirichlet_residual(rec: &EigenRecord, config: &VerifyConfig) -> Result<DirichletReport> {
    check_config(config)?;
    expect_curl(rec)?;
    let domain = rec.domain();
    let fd = Differencer::new(config.step * domain.radius(), config.order, domain)?;
    let inner = interior_radius(&fd, &domain)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let l2 = rec.eigenvalue() * rec.eigenvalue() * config.eigenvalue_scale.powi(2);
    let v = |x: [f64; 3]| dot(x, rec.eval(x));
    let (mut sup_v, mut sup_res) = (0.0f64, 0.0f64);
    for _ in 0..config.samples {
        let x = uniform_in_ball(&mut rng, inner);
        let value = v(x);
        if value.abs() < SMALL_FIELD {
            continue;
        }
        sup_v = sup_v.max(value.abs());
        sup_res = sup_res.max((fd.scalar_laplacian(&v, x)? + l2 * value).abs());
    }
    let mut boundary = 0.0f64;
    for _ in 0..config.boundary_samples {
        let (theta, phi) = uniform_on_sphere(&mut rng);
        let u = rec.eval_spherical(domain.radius(), theta, phi);
        boundary = boundary.max((domain.radius() * u[0]).abs());
    }
    Ok(DirichletReport {
        interior: if sup_v > 0.0 {
            sup_res / (l2 * sup_v)
        } else {
            0.0
        },
        boundary,
    })
}

fn expect_curl(rec: &EigenRecord) -> Result<()> {
    if rec.index().operator() != Operator::Curl {
        return Err(Error::OperatorKind {
            expected: Operator::Curl,
            found: rec.index().operator(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatibilityReport {
    /// `sup|(∂_r − iλ)(r w) − r⁻¹ H v|`.
    pub radial: f64,
    /// `sup|K w − λ v + i r⁻¹ ∂_r(r v)|`.
    pub angular: f64,
    pub points: usize,
}

const SPHERICAL_STEP: f64 = 1e-3;

fn d4(f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
    let h = SPHERICAL_STEP;
    (8.0 * (f(t + h) - f(t - h)) - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h)
}

/// Residuals of the first-order system linking `v = r u_r` and `w = u_φ + i u_θ`
/// for a curl eigenfield, at `points` seeded interior points with `sin θ >= 0.1`.
/// Absolute values; spherical derivatives by fourth-order differences.
pub fn compatibility_residuals(
    rec: &EigenRecord,
    points: usize,
    seed: u64,
) -> Result<CompatibilityReport> {
    expect_curl(rec)?;
    let radius = rec.domain().radius();
    let lambda = rec.eigenvalue();
    let i = Complex64::i();
    let v = |r: f64, t: f64, p: f64| r * rec.eval_spherical(r, t, p)[0];
    let w = |r: f64, t: f64, p: f64| {
        let u = rec.eval_spherical(r, t, p);
        Complex64::new(u[2], u[1])
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut radial, mut angular) = (0.0f64, 0.0f64);
    let mut used = 0;
    while used < points {
        let r = radius * rng.gen_range(0.05..0.95);
        let (theta, phi) = uniform_on_sphere(&mut rng);
        if theta.sin() < 0.1 {
            continue;
        }
        used += 1;
        let d_rw = Complex64::new(
            d4(&|s| s * w(s, theta, phi).re, r),
            d4(&|s| s * w(s, theta, phi).im, r),
        );
        let hv = Complex64::new(
            d4(&|p| v(r, theta, p), phi) / theta.sin(),
            d4(&|t| v(r, t, phi), theta),
        );
        let first = d_rw - i * lambda * r * w(r, theta, phi) - hv / r;
        let kw = k_apply(|t, p| w(r, t, p), theta, phi)?;
        let d_rv = d4(&|s| s * v(s, theta, phi), r);
        let second = kw - lambda * v(r, theta, phi) + i * d_rv / r;
        radial = radial.max(first.norm());
        angular = angular.max(second.norm());
    }
    Ok(CompatibilityReport {
        radial,
        angular,
        points: used,
    })
}

/// Gram matrix `G_ij = (u_i, u_j)` on `grid`.
pub fn gram_matrix(records: &[EigenRecord], grid: &QuadratureGrid) -> Vec<Vec<f64>> {
    let samples: Vec<GridField> = records.iter().map(|r| sample_eigenfield(r, grid)).collect();
    let n = samples.len();
    let mut g = alloc::vec![alloc::vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = samples[i].dot(&samples[j], grid);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

/// `max_ij |G_ij − δ_ij|`.
pub fn gram_defect(records: &[EigenRecord], grid: &QuadratureGrid) -> f64 {
    let g = gram_matrix(records, grid);
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - delta).abs());
        }
    }
    worst
}

/// `|(Au, v) − (u, Av)|` by quadrature, with `A = rot` or `∇div` applied by
/// finite differences of order 6 and step `h`. Stencils near the boundary reach
/// beyond the ball, so both fields must extend past it.
pub fn verify_adjointness<U, V>(
    u: &U,
    v: &V,
    operator: Operator,
    grid: &QuadratureGrid,
    h: f64,
) -> Result<f64>
where
    U: VectorField + ?Sized,
    V: VectorField + ?Sized,
{
    let fd = Differencer::unconfined(h, 6)?;
    let apply = |f: &dyn Fn([f64; 3]) -> [f64; 3], x: [f64; 3]| match operator {
        Operator::Curl => fd.curl(&f, x),
        Operator::GradDiv => fd.graddiv(&f, x),
    };
    let fu = |x: [f64; 3]| u.eval(x);
    let fv = |x: [f64; 3]| v.eval(x);
    let (mut left, mut right) = (0.0, 0.0);
    for node in grid.nodes() {
        let x = node.position;
        let (ux, vx) = (u.eval(x), v.eval(x));
        left += node.weight * dot(apply(&fu, x)?, vx);
        right += node.weight * dot(ux, apply(&fv, x)?);
    }
    Ok((left - right).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbasis::{normalize, Sign};

    fn normalized(idx: MultiIndex) -> EigenRecord {
        let d = BallDomain::unit();
        normalize(
            &EigenRecord::new(idx, d).unwrap(),
            &QuadratureGrid::with_defaults(d),
        )
        .unwrap()
    }

    #[test]
    fn curl_eigenpair_passes() {
        let rec = normalized(MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap());
        let rep = verify_eigenpair(&rec, &VerifyConfig::default()).unwrap();
        assert!(rep.eigen_residual <= 1e-3, "{rep:?}");
        assert!(rep.div_residual.unwrap() <= 1e-3);
        assert!(rep.boundary_flux <= 1e-10 && rep.gram_defect <= 1e-8);
        assert_eq!(rep.samples, 200);
    }

    #[test]
    fn graddiv_eigenpair_passes() {
        let rec = normalized(MultiIndex::graddiv(0, 1, 0).unwrap());
        let rep = verify_eigenpair(&rec, &VerifyConfig::default()).unwrap();
        assert!(rep.rot_residual.unwrap() <= 1e-3 && rep.div_residual.is_none());
        assert!(rep.eigen_residual <= 1e-3);
        assert!(rep.boundary_flux <= 1e-10);
    }

    #[test]
    fn second_order_convergence() {
        let rec = normalized(MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap());
        let at = |step: f64| {
            let cfg = VerifyConfig {
                order: 2,
                step,
                ..VerifyConfig::default()
            };
            verify_eigenpair(&rec, &cfg).unwrap().eigen_residual
        };
        let ratio = at(0.02) / at(0.01);
        assert!((3.5..4.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn perturbed_eigenvalue_is_detected() {
        let rec = normalized(MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap());
        let cfg = VerifyConfig {
            eigenvalue_scale: 1.01,
            ..VerifyConfig::default()
        };
        assert!(verify_eigenpair(&rec, &cfg).unwrap().eigen_residual > 1e-3);
    }

    #[test]
    fn dirichlet_reduction() {
        let rec = normalized(MultiIndex::curl(2, 2, 1, Sign::Minus).unwrap());
        let rep = dirichlet_residual(&rec, &VerifyConfig::default()).unwrap();
        assert!(rep.interior <= 1e-3 && rep.boundary <= 1e-10, "{rep:?}");
    }

    #[test]
    fn compatibility_system() {
        for idx in [
            MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap(),
            MultiIndex::curl(2, 1, 1, Sign::Minus).unwrap(),
            MultiIndex::curl(3, 1, -2, Sign::Plus).unwrap(),
        ] {
            let rep = compatibility_residuals(&normalized(idx), 50, 7).unwrap();
            assert!(rep.radial <= 1e-6 && rep.angular <= 1e-6, "{idx}: {rep:?}");
        }
    }

    #[test]
    fn adjointness_of_curl_and_graddiv() {
        let d = BallDomain::unit();
        let grid = QuadratureGrid::new(d, 20, 12, 16).unwrap();
        let a = normalized(MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap());
        let b = normalized(MultiIndex::curl(1, 1, 0, Sign::Minus).unwrap());
        let g = normalized(MultiIndex::graddiv(1, 1, 0).unwrap());
        assert!(verify_adjointness(&a, &b, Operator::Curl, &grid, 0.02).unwrap() <= 1e-6);
        assert_eq!(
            verify_adjointness(&a, &a, Operator::Curl, &grid, 0.02).unwrap(),
            0.0
        );
        assert!(verify_adjointness(&a, &g, Operator::GradDiv, &grid, 0.02).unwrap() <= 1e-6);
    }

    #[test]
    fn gram_of_small_basis() {
        let d = BallDomain::unit();
        let grid = QuadratureGrid::with_defaults(d);
        let recs: Vec<_> = [
            MultiIndex::curl(1, 1, -1, Sign::Plus).unwrap(),
            MultiIndex::curl(1, 1, 1, Sign::Plus).unwrap(),
            MultiIndex::graddiv(1, 1, 1).unwrap(),
            MultiIndex::graddiv(0, 2, 0).unwrap(),
        ]
        .into_iter()
        .map(normalized)
        .collect();
        assert!(gram_defect(&recs, &grid) <= 1e-6);
    }

    #[test]
    fn invalid_configuration() {
        let rec = normalized(MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap());
        let cfg = VerifyConfig {
            order: 5,
            ..VerifyConfig::default()
        };
        assert_eq!(verify_eigenpair(&rec, &cfg), Err(Error::StencilOrder(5)));
        let g = normalized(MultiIndex::graddiv(1, 1, 0).unwrap());
        assert!(dirichlet_residual(&g, &VerifyConfig::default()).is_err());
    }
}
