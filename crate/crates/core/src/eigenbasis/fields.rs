#[allow(unused_imports)]
use num_traits::Float;

use super::{
    curl_eigenvalue, graddiv_eigenvalue, spherical_to_cartesian, BallDomain, MultiIndex, Operator,
    SphericalPoint, SphericalVector,
};
use crate::ballcalc::QuadratureGrid;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::specfun::{sph_j, sph_j_over_z, sph_j_prime, AngularSample, RealHarmonic};

/// Largest relative change of `c` tolerated when the quadrature grid is doubled.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

/// Radial factors of a basis field. With `Y` the real harmonic and
/// `Y_φs = (1/sin θ) ∂_φ Y`, the field is
/// `u_r = c·a·Y`, `u_θ = c·(b·∂_θY + c₂·Y_φs)`, `u_φ = c·(b·Y_φs − c₂·∂_θY)`
/// where `c₂` is the `c` field of this struct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProfile {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RadialProfile {
    /// Spherical components for angular data `y` and amplitude `scale`.
    pub fn combine(&self, y: &AngularSample, scale: f64) -> [f64; 3] {
        [
            scale * self.a * y.value,
            scale * (self.b * y.d_theta + self.c * y.d_phi_over_sin),
            scale * (self.b * y.d_phi_over_sin - self.c * y.d_theta),
        ]
    }
}

/// A basis field: index, eigenvalue and amplitude `c`.
///
/// Curl fields are `u_r = c (λr)⁻¹ψ_n(λr) Y` and `u_φ + i u_θ = c (λr)⁻¹Φ_n(λr) HY`
/// with `λ` signed. Grad-div fields are `∇g` for `g = c ψ_n(νr) Y`, `ν = √(−μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenRecord {
    index: MultiIndex,
    eigenvalue: f64,
    c: f64,
    domain: BallDomain,
    harmonic: RealHarmonic,
}

impl EigenRecord {
    /// Record with `c = 1`.
    pub fn new(index: MultiIndex, domain: BallDomain) -> Result<Self> {
        let eigenvalue = match index.operator() {
            Operator::Curl => curl_eigenvalue(&index, &domain)?,
            Operator::GradDiv => graddiv_eigenvalue(&index, &domain)?,
        };
        let harmonic = RealHarmonic::new(index.n() as usize, index.k())?;
        Ok(Self {
            index,
            eigenvalue,
            c: 1.0,
            domain,
            harmonic,
        })
    }

    /// Same field with amplitude `c`.
    pub fn with_amplitude(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    /// Same field with a perturbed eigenvalue; used for fault injection.
    pub fn with_eigenvalue(mut self, eigenvalue: f64) -> Self {
        self.eigenvalue = eigenvalue;
        self
    }

    pub fn index(&self) -> MultiIndex {
        self.index
    }

    pub fn eigenvalue(&self) -> f64 {
        self.eigenvalue
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn domain(&self) -> BallDomain {
        self.domain
    }

    pub fn harmonic(&self) -> RealHarmonic {
        self.harmonic
    }

    /// `λ` (signed) for curl, `ν` for grad-div.
    pub fn wavenumber(&self) -> f64 {
        match self.index.operator() {
            Operator::Curl => self.eigenvalue,
            Operator::GradDiv => (-self.eigenvalue).sqrt(),
        }
    }

    pub fn profile(&self, r: f64) -> RadialProfile {
        let n = self.index.n() as usize;
        let k = self.wavenumber();
        let z = k * r;
        match self.index.operator() {
            Operator::Curl => {
                let nn = (n * (n + 1)) as f64;
                let a = sph_j_over_z(n, z);
                RadialProfile {
                    a,
                    b: (a + sph_j_prime(n, z)) / nn,
                    c: sph_j(n, z) / nn,
                }
            }
            Operator::GradDiv => RadialProfile {
                a: k * sph_j_prime(n, z),
                b: if n == 0 { 0.0 } else { k * sph_j_over_z(n, z) },
                c: 0.0,
            },
        }
    }

    /// Spherical components at `(r, θ, φ)` without range checks.
    pub fn eval_spherical(&self, r: f64, theta: f64, phi: f64) -> [f64; 3] {
        let y = self.harmonic.eval(theta, phi);
        self.profile(r).combine(&y, self.c)
    }

    /// Spherical components at `p`, which must lie in the closed ball.
    pub fn eval_point(&self, p: SphericalPoint) -> Result<SphericalVector> {
        let radius = self.domain.radius();
        if p.r > radius * (1.0 + 1e-12) {
            return Err(Error::OutsideBall { r: p.r, radius });
        }
        let [a, b, c] = self.eval_spherical(p.r, p.theta, p.phi);
        Ok(SphericalVector::spherical(a, b, c))
    }

    /// Grad-div potential `g = c ψ_n(νr) Y`; curl records have none.
    pub fn potential(&self, x: [f64; 3]) -> Result<f64> {
        if self.index.operator() != Operator::GradDiv {
            return Err(Error::OperatorKind {
                expected: Operator::GradDiv,
                found: self.index.operator(),
            });
        }
        let p = SphericalPoint::from_cartesian(x);
        let y = self.harmonic.eval(p.theta, p.phi);
        Ok(self.c * sph_j(self.index.n() as usize, self.wavenumber() * p.r) * y.value)
    }
}

impl VectorField for EigenRecord {
    /// Cartesian components; the closed form is evaluated outside the ball as well.
    fn eval(&self, x: [f64; 3]) -> [f64; 3] {
        let p = SphericalPoint::from_cartesian(x);
        let v = self.eval_spherical(p.r, p.theta, p.phi);
        spherical_to_cartesian(v, p.theta, p.phi)
    }
}

fn expect(rec: &EigenRecord, op: Operator) -> Result<()> {
    if rec.index.operator() != op {
        return Err(Error::OperatorKind {
            expected: op,
            found: rec.index.operator(),
        });
    }
    Ok(())
}

pub fn eval_curl_field(rec: &EigenRecord, p: SphericalPoint) -> Result<SphericalVector> {
    expect(rec, Operator::Curl)?;
    rec.eval_point(p)
}

pub fn eval_graddiv_field(rec: &EigenRecord, p: SphericalPoint) -> Result<SphericalVector> {
    expect(rec, Operator::GradDiv)?;
    rec.eval_point(p)
}

/// `(sin x − x cos x) / x³`, by its Taylor series near zero.
fn bessel_ratio(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 * (1.0 / 45360.0 - x2 / 3991680.0)))
    } else {
        let (s, c) = x.sin_cos();
        (s - x * c) / (x * x * x)
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Closed-form axisymmetric curl eigenfield for `κ = (1,1,0)` and wavenumber `ρ`,
/// with `x = rρ` and `f(x) = (sin x − x cos x)/x³`:
/// `u_r = 2 f cos θ`, `u_θ = (f − sin x/x) sin θ`, `u_φ = x f sin θ`.
/// Equals twice the general formula with `Y = cos θ`; `rot u = ρu`.
pub fn eval_axisym_110(p: SphericalPoint, rho: f64) -> SphericalVector {
    let x = p.r * rho;
    let f = bessel_ratio(x);
    let (st, ct) = p.theta.sin_cos();
    SphericalVector::spherical(2.0 * f * ct, (f - sinc(x)) * st, x * f * st)
}

/// `∫_B |u|² dx` for amplitude 1, by the grid's rule applied to the radial and angular
/// factors separately. The mixed `∂_θY · Y_φs` terms cancel pointwise.
fn unit_norm_squared(rec: &EigenRecord, grid: &QuadratureGrid) -> f64 {
    let (mut radial_a, mut radial_t) = (0.0, 0.0);
    for &(r, w) in grid.radial() {
        let p = rec.profile(r);
        radial_a += w * p.a * p.a;
        radial_t += w * (p.b * p.b + p.c * p.c);
    }
    let (mut ang_v, mut ang_g) = (0.0, 0.0);
    let wphi = grid.phi_weight();
    for &(theta, wt) in grid.polar() {
        for j in 0..grid.counts().2 {
            let y = rec.harmonic.eval(theta, grid.phi(j));
            ang_v += wt * wphi * y.value * y.value;
            ang_g += wt * wphi * (y.d_theta * y.d_theta + y.d_phi_over_sin * y.d_phi_over_sin);
        }
    }
    radial_a * ang_v + radial_t * ang_g
}

/// Sets `c > 0` so that the field has unit `L₂(B)` norm on `grid`. Fails with a
/// resolution error if doubling the grid moves `c` by more than
/// [`NORMALIZATION_TOLERANCE`] (relative).
pub fn normalize(rec: &EigenRecord, grid: &QuadratureGrid) -> Result<EigenRecord> {
    if (grid.radius() - rec.domain.radius()).abs() > 1e-12 * rec.domain.radius() {
        return Err(Error::InvalidConfig(
            "grid radius differs from the record's ball",
        ));
    }
    let c = 1.0 / unit_norm_squared(rec, grid).sqrt();
    let fine = 1.0 / unit_norm_squared(rec, &grid.refined()).sqrt();
    let change = ((c - fine) / fine).abs();
    if change.is_nan() || change > NORMALIZATION_TOLERANCE {
        return Err(Error::Resolution {
            quantity: "normalization constant",
            change,
            tolerance: NORMALIZATION_TOLERANCE,
        });
    }
    Ok(rec.with_amplitude(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbasis::{to_cartesian, Sign};
    use crate::specfun::bessel_zero;
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn curl(n: u32, m: u32, k: i32, s: Sign, r: f64) -> EigenRecord {
        EigenRecord::new(
            MultiIndex::curl(n, m, k, s).unwrap(),
            BallDomain::new(r).unwrap(),
        )
        .unwrap()
    }

    fn graddiv(n: u32, m: u32, k: i32, r: f64) -> EigenRecord {
        EigenRecord::new(
            MultiIndex::graddiv(n, m, k).unwrap(),
            BallDomain::new(r).unwrap(),
        )
        .unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> [f64; 3] {
        loop {
            let x = [
                rng.gen_range(-radius..radius),
                rng.gen_range(-radius..radius),
                rng.gen_range(-radius..radius),
            ];
            if crate::field::norm(x) < radius {
                return x;
            }
        }
    }

    /// Chandrasekhar–Kendall construction in Cartesian coordinates for the axisymmetric
    /// `n = 1` field: with `χ = j_1(λr) cos θ`, `u = rot rot(xχ) + λ rot(xχ)`.
    fn ck_field(lambda: f64, x: [f64; 3]) -> [f64; 3] {
        let r = crate::field::norm(x);
        let z = lambda * r;
        let j1 = |z: f64| (z.sin() / z - z.cos()) / z;
        let j1p = |z: f64| z.sin() / z - 2.0 * j1(z) / z;
        let g = j1(z) / r;
        let dg = (lambda * j1p(z) - j1(z) / r) / r;
        let t = [-g * x[1], g * x[0], 0.0];
        let s = [
            -dg / r * x[0] * x[2],
            -dg / r * x[1] * x[2],
            dg / r * (x[0] * x[0] + x[1] * x[1]) + 2.0 * g,
        ];
        [
            s[0] + lambda * t[0],
            s[1] + lambda * t[1],
            s[2] + lambda * t[2],
        ]
    }

    #[test]
    fn boundary_normal_component_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for rec in [
            curl(1, 1, 0, Sign::Plus, 1.0),
            curl(2, 3, -1, Sign::Minus, 1.7),
            curl(3, 2, 3, Sign::Plus, 0.5),
            graddiv(0, 1, 0, 1.0),
            graddiv(2, 2, 1, 2.0),
        ] {
            let radius = rec.domain().radius();
            for _ in 0..50 {
                let theta = rng.gen_range(0.0..PI);
                let phi = rng.gen_range(0.0..2.0 * PI);
                let v = rec
                    .eval_point(SphericalPoint::new(radius, theta, phi).unwrap())
                    .unwrap();
                assert!(v.components[0].abs() <= 1e-10, "{}", rec.index());
            }
        }
    }

    #[test]
    fn matches_chandrasekhar_kendall_form() {
        let rec = curl(1, 1, 0, Sign::Plus, 1.0);
        let lambda = rec.eigenvalue();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut ratio = None;
        for _ in 0..50 {
            let x = random_point(&mut rng, 1.0);
            let u = rec.eval(x);
            let w = ck_field(lambda, x);
            // common constant: Y_1^0 = √(3/4π) cos θ versus the CK cos θ
            let s = *ratio.get_or_insert_with(|| crate::field::norm(w) / crate::field::norm(u));
            for i in 0..3 {
                assert!(
                    (u[i] * s - w[i]).abs() <= 1e-6 * crate::field::norm(w),
                    "{x:?}"
                );
            }
        }
        let expected = 2.0 * lambda / (3.0 / (4.0 * PI)).sqrt();
        assert!((ratio.unwrap() - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn negative_sign_is_lambda_reflection() {
        let plus = curl(2, 1, 1, Sign::Plus, 1.0);
        let minus = curl(2, 1, 1, Sign::Minus, 1.0);
        assert_eq!(minus.eigenvalue(), -plus.eigenvalue());
        for &(r, t, f) in &[(0.3, 0.4, 1.0), (0.8, 2.0, 5.0)] {
            let a = plus.eval_spherical(r, t, f);
            let b = minus.eval_spherical(r, t, f);
            // even n: ψ_n(−z)/(−z) odd in z, so u_r flips; the tangential b-part flips,
            // the c-part keeps its sign
            let pp = plus.profile(r);
            let pm = minus.profile(r);
            assert!((pp.a + pm.a).abs() < 1e-15 && (pp.b + pm.b).abs() < 1e-15);
            assert!((pp.c - pm.c).abs() < 1e-15);
            assert!((a[0] + b[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn origin_limits() {
        let rec = curl(1, 1, 0, Sign::Plus, 1.0);
        let p = rec.profile(0.0);
        assert!((p.a - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.b - 1.0 / 3.0).abs() < 1e-15 && p.c == 0.0);
        let rec2 = curl(2, 1, 2, Sign::Minus, 1.0);
        let v = rec2.eval_spherical(0.0, 1.0, 2.0);
        assert!(v.iter().all(|c| c.abs() < 1e-300));
        let g = graddiv(1, 1, 0, 1.0);
        assert!(g.eval_spherical(0.0, 0.0, 0.0)[0].is_finite());
    }

    #[test]
    fn graddiv_field_is_gradient_of_potential() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for rec in [
            graddiv(0, 1, 0, 1.0),
            graddiv(1, 2, -1, 1.0),
            graddiv(2, 1, 2, 1.4),
        ] {
            let radius = rec.domain().radius();
            for _ in 0..20 {
                let x = random_point(&mut rng, 0.9 * radius);
                let v = rec.eval(x);
                let h = 1e-4;
                for i in 0..3 {
                    let (mut xp, mut xm) = (x, x);
                    xp[i] += h;
                    xm[i] -= h;
                    let d = (rec.potential(xp).unwrap() - rec.potential(xm).unwrap()) / (2.0 * h);
                    assert!(
                        (d - v[i]).abs() < 1e-6,
                        "{} axis {i}: {d} vs {}",
                        rec.index(),
                        v[i]
                    );
                }
            }
        }
    }

    #[test]
    fn order_zero_has_no_tangential_part() {
        let rec = graddiv(0, 2, 0, 1.0);
        for &(r, t) in &[(0.2, 0.3), (0.9, 2.9)] {
            let v = rec.eval_spherical(r, t, 1.0);
            assert_eq!((v[1], v[2]), (0.0, 0.0));
        }
    }

    #[test]
    fn axisymmetric_form_is_multiple_of_general_formula() {
        let rho = bessel_zero(1, 1).unwrap();
        let rec = curl(1, 1, 0, Sign::Plus, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let scale = 2.0 * (4.0 * PI / 3.0).sqrt();
        for _ in 0..50 {
            let x = random_point(&mut rng, 1.0);
            let p = SphericalPoint::from_cartesian(x);
            let a = eval_axisym_110(p, rho).components;
            let b = rec.eval_spherical(p.r, p.theta, p.phi);
            for i in 0..3 {
                assert!((a[i] - scale * b[i]).abs() <= 1e-6 * (1.0 + a[i].abs()));
            }
        }
    }

    #[test]
    fn axisymmetric_form_on_axis() {
        let rho = bessel_zero(1, 1).unwrap();
        let on_axis = eval_axisym_110(SphericalPoint::new(0.4, 0.0, 0.0).unwrap(), rho);
        assert_eq!((on_axis.components[1], on_axis.components[2]), (0.0, 0.0));
        // approach the origin along several directions: Cartesian limit (0, 0, 2/3)
        for &(t, f) in &[
            (0.0, 0.0),
            (0.7, 1.0),
            (PI / 2.0, 3.0),
            (PI, 0.0),
            (2.2, 5.5),
        ] {
            let p = SphericalPoint::new(1e-9, t, f).unwrap();
            let v = to_cartesian(eval_axisym_110(p, rho), p).unwrap().components;
            assert!(v[0].abs() < 1e-8 && v[1].abs() < 1e-8 && (v[2] - 2.0 / 3.0).abs() < 1e-8);
        }
        // the Taylor branch joins the direct formula
        assert!((bessel_ratio(0.1 * (1.0 - 1e-15)) - bessel_ratio(0.1)).abs() < 1e-13);
    }

    #[test]
    fn normalization_is_stable_and_unit() {
        let d = BallDomain::unit();
        let grid = QuadratureGrid::with_defaults(d);
        for rec in [
            curl(1, 1, 0, Sign::Plus, 1.0),
            curl(3, 2, -2, Sign::Minus, 1.0),
            graddiv(2, 3, 1, 1.0),
        ] {
            let n = normalize(&rec, &grid).unwrap();
            assert!(n.c() > 0.0);
            let fine = normalize(&rec, &grid.refined()).unwrap();
            assert!(((n.c() - fine.c()) / fine.c()).abs() <= 1e-8);
            let norm2: f64 = grid
                .nodes()
                .map(|node| {
                    let v = n.eval_spherical(node.r, node.theta, node.phi);
                    node.weight * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
                })
                .sum();
            assert!((norm2 - 1.0).abs() <= 1e-8, "{}: {norm2}", rec.index());
        }
    }

    #[test]
    fn under_resolved_grid_is_reported() {
        let d = BallDomain::unit();
        let coarse = QuadratureGrid::new(d, 4, 4, 4).unwrap();
        let rec = curl(3, 4, 1, Sign::Plus, 1.0);
        assert!(matches!(
            normalize(&rec, &coarse),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn amplitude_scaling_with_radius() {
        // curl fields: c ∝ R^{-3/2}; grad-div fields carry one factor ν, c ∝ R^{-1/2}
        let norm = |rec: EigenRecord| {
            normalize(&rec, &QuadratureGrid::with_defaults(rec.domain()))
                .unwrap()
                .c()
        };
        let c1 = norm(curl(1, 1, 0, Sign::Plus, 1.0));
        let c2 = norm(curl(1, 1, 0, Sign::Plus, 2.0));
        assert!((c2 / c1 - 2f64.powf(-1.5)).abs() < 1e-10);
        let g1 = norm(graddiv(1, 1, 0, 1.0));
        let g2 = norm(graddiv(1, 1, 0, 2.0));
        assert!((g2 / g1 - 2f64.powf(-0.5)).abs() < 1e-10);
    }

    #[test]
    fn kind_checked_evaluators() {
        let p = SphericalPoint::new(0.5, 1.0, 1.0).unwrap();
        assert!(eval_curl_field(&graddiv(1, 1, 0, 1.0), p).is_err());
        assert!(eval_graddiv_field(&curl(1, 1, 0, Sign::Plus, 1.0), p).is_err());
        let outside = SphericalPoint::new(1.5, 1.0, 1.0).unwrap();
        assert!(matches!(
            eval_curl_field(&curl(1, 1, 0, Sign::Plus, 1.0), outside),
            Err(Error::OutsideBall { .. })
        ));
        assert!(curl(1, 1, 0, Sign::Plus, 1.0)
            .potential([0.1, 0.0, 0.0])
            .is_err());
    }
}
