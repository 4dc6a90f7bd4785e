//! Spherical harmonics with unit norm on the sphere and the angular operators
//! `H v = (1/sin θ) ∂_φ v + i ∂_θ v` and `K w = (1/sin θ)(∂_θ (sin θ w) + i ∂_φ w)`.
//!
//! Associated Legendre functions are carried as `P̄_n^k(cos θ) = sin^k θ · Q̄_n^k(cos θ)`
//! with `Q̄` a polynomial built by the fully normalized three-term recurrence. Both
//! `P̄/sin θ` and `dP̄/dθ` are then formed without dividing by `sin θ`, so the poles
//! are evaluated from the regular limits.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// `P̄_n^k`, `P̄_n^k / sin θ` (zero when `k = 0`) and `dP̄_n^k / dθ` at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Legendre {
    pub value: f64,
    pub over_sin: f64,
    pub d_theta: f64,
}

/// Normalized associated Legendre data for `0 <= k <= n`, no Condon–Shortley phase.
/// `∫ P̄² sin θ dθ dφ = 1` once paired with `e^{ikφ}`.
pub fn legendre(n: usize, k: usize, theta: f64) -> Legendre {
    debug_assert!(k <= n);
    let (s, x) = (theta.sin(), theta.cos());
    // Q̄_k^k
    let mut qkk = (2 * k + 1) as f64 / (4.0 * PI);
    for i in 1..=k {
        qkk *= (2 * i - 1) as f64 / (2 * i) as f64;
    }
    let qkk = qkk.sqrt();
    let (mut q_prev, mut dq_prev) = (0.0, 0.0);
    let (mut q, mut dq) = (qkk, 0.0);
    let kf = k as f64;
    for l in (k + 1)..=n {
        let lf = l as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - kf * kf)).sqrt();
        let b = if l == k + 1 {
            0.0
        } else {
            (((lf - 1.0).powi(2) - kf * kf) * (2.0 * lf + 1.0)
                / ((lf * lf - kf * kf) * (2.0 * lf - 3.0)))
                .sqrt()
        };
        let q_next = a * x * q - b * q_prev;
        let dq_next = a * (q + x * dq) - b * dq_prev;
        q_prev = q;
        dq_prev = dq;
        q = q_next;
        dq = dq_next;
    }
    if k == 0 {
        return Legendre {
            value: q,
            over_sin: 0.0,
            d_theta: -s * dq,
        };
    }
    let sk1 = s.powi(k as i32 - 1);
    Legendre {
        value: sk1 * s * q,
        over_sin: sk1 * q,
        d_theta: kf * sk1 * x * q - sk1 * s * s * dq,
    }
}

fn check_index(n: usize, k: i32) -> Result<usize> {
    let ka = k.unsigned_abs() as usize;
    if ka > n {
        return Err(Error::HarmonicIndex { n, k });
    }
    Ok(ka)
}

fn cs_phase(k: i32) -> f64 {
    if k > 0 && k % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Complex `Y_n^k(θ, φ)` with unit `L²(S²)` norm and Condon–Shortley phase.
pub fn sph_harmonic(n: usize, k: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let ka = check_index(n, k)?;
    let p = legendre(n, ka, theta);
    Ok(Complex64::from_polar(cs_phase(k) * p.value, k as f64 * phi))
}

/// `H Y_n^k = (ik/sin θ) Y_n^k + i ∂_θ Y_n^k`, finite at the poles.
pub fn h_apply(n: usize, k: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let ka = check_index(n, k)?;
    let p = legendre(n, ka, theta);
    let radial = cs_phase(k) * (k as f64 * p.over_sin + p.d_theta);
    Ok(Complex64::new(0.0, radial) * Complex64::from_polar(1.0, k as f64 * phi))
}

/// `K w` from the value and partial derivatives of `w` at `θ`.
pub fn k_apply_partials(
    w: Complex64,
    dw_dtheta: Complex64,
    dw_dphi: Complex64,
    theta: f64,
) -> Result<Complex64> {
    let s = theta.sin();
    if s.abs() < 1e-12 {
        return Err(Error::PoleEvaluation { theta });
    }
    Ok(w * theta.cos() / s + dw_dtheta + Complex64::i() * dw_dphi / s)
}

/// `K w` with the partial derivatives of `w` taken by fourth-order central differences.
pub fn k_apply<F>(w: F, theta: f64, phi: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    if theta.sin().abs() < 1e-12 {
        return Err(Error::PoleEvaluation { theta });
    }
    const H: f64 = 1e-3;
    let d = |f: &dyn Fn(f64) -> Complex64, t: f64| {
        (f(t - 2.0 * H) - f(t + 2.0 * H) + (f(t + H) - f(t - H)) * 8.0) / (12.0 * H)
    };
    let dt = d(&|t| w(t, phi), theta);
    let dp = d(&|p| w(theta, p), phi);
    k_apply_partials(w(theta, phi), dt, dp, theta)
}

/// Angular factor of a real basis field: `Y`, `∂_θ Y` and `(1/sin θ) ∂_φ Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSample {
    pub value: f64,
    pub d_theta: f64,
    pub d_phi_over_sin: f64,
}

impl AngularSample {
    /// `H Y` for a real `Y`: real part `(1/sin θ) ∂_φ Y`, imaginary part `∂_θ Y`.
    pub fn h(&self) -> Complex64 {
        Complex64::new(self.d_phi_over_sin, self.d_theta)
    }
}

/// Real orthonormal spherical harmonic: `k > 0` is `√2 P̄_n^k cos kφ`, `k < 0` is
/// `√2 P̄_n^{|k|} sin |k|φ`, `k = 0` is `P̄_n^0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealHarmonic {
    n: usize,
    k: i32,
}

impl RealHarmonic {
    pub fn new(n: usize, k: i32) -> Result<Self> {
        check_index(n, k)?;
        Ok(Self { n, k })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> i32 {
        self.k
    }

    pub fn eval(&self, theta: f64, phi: f64) -> AngularSample {
        let ka = self.k.unsigned_abs() as usize;
        let p = legendre(self.n, ka, theta);
        if self.k == 0 {
            return AngularSample {
                value: p.value,
                d_theta: p.d_theta,
                d_phi_over_sin: 0.0,
            };
        }
        let kf = ka as f64;
        let (sk, ck) = (kf * phi).sin_cos();
        let r2 = core::f64::consts::SQRT_2;
        if self.k > 0 {
            AngularSample {
                value: r2 * p.value * ck,
                d_theta: r2 * p.d_theta * ck,
                d_phi_over_sin: -r2 * kf * p.over_sin * sk,
            }
        } else {
            AngularSample {
                value: r2 * p.value * sk,
                d_theta: r2 * p.d_theta * sk,
                d_phi_over_sin: r2 * kf * p.over_sin * ck,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    /// Gauss–Legendre nodes on [-1, 1] via Newton on P_N.
    fn gauss(nq: usize) -> Vec<(f64, f64)> {
        (0..nq)
            .map(|i| {
                let mut x = (PI * (i as f64 + 0.75) / (nq as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for l in 2..=nq {
                        let p2 = ((2 * l - 1) as f64 * x * p1 - (l - 1) as f64 * p0) / l as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = nq as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    }

    #[test]
    fn constant_harmonic() {
        for &(t, p) in &[(0.0, 0.0), (1.0, 2.0), (PI, 5.0)] {
            let y = sph_harmonic(0, 0, t, p).unwrap();
            assert!((y.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && y.im == 0.0);
        }
    }

    #[test]
    fn azimuthal_phase_only() {
        for n in 0..5 {
            for k in -(n as i32)..=(n as i32) {
                let a = sph_harmonic(n, k, 0.8, 0.1).unwrap().norm();
                let b = sph_harmonic(n, k, 0.8, 4.0).unwrap().norm();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn y10_closed_form() {
        let c = (3.0 / (4.0 * PI)).sqrt();
        for t in [0.0, PI / 3.0, PI / 2.0] {
            let y = sph_harmonic(1, 0, t, 0.3).unwrap();
            assert!((y.re - c * t.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn orthonormal_on_sphere() {
        let nodes = gauss(16);
        let nphi = 32;
        let mut idx = Vec::new();
        for n in 0..=4usize {
            for k in -(n as i32)..=(n as i32) {
                idx.push((n, k));
            }
        }
        for &(n1, k1) in &idx {
            for &(n2, k2) in &idx {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(x, w) in &nodes {
                    let t = x.acos();
                    for j in 0..nphi {
                        let p = 2.0 * PI * j as f64 / nphi as f64;
                        let a = sph_harmonic(n1, k1, t, p).unwrap();
                        let b = sph_harmonic(n2, k2, t, p).unwrap();
                        acc += a * b.conj() * w * (2.0 * PI / nphi as f64);
                    }
                }
                let expect = if (n1, k1) == (n2, k2) { 1.0 } else { 0.0 };
                assert!((acc.re - expect).abs() < 1e-10 && acc.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn h_of_constant_vanishes() {
        assert_eq!(h_apply(0, 0, 0.4, 1.1).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn h_of_y10() {
        let c = (3.0 / (4.0 * PI)).sqrt();
        for t in [0.0, 0.5, 2.0, PI] {
            let h = h_apply(1, 0, t, 0.9).unwrap();
            assert!(h.re.abs() < 1e-15);
            assert!((h.im + c * t.sin()).abs() < 1e-15);
        }
    }

    fn h_by_differences(n: usize, k: i32, t: f64, p: f64) -> Complex64 {
        let e = 1e-5;
        let y = |t: f64, p: f64| sph_harmonic(n, k, t, p).unwrap();
        let dp = (y(t, p + e) - y(t, p - e)) / (2.0 * e);
        let dt = (y(t + e, p) - y(t - e, p)) / (2.0 * e);
        dp / t.sin() + Complex64::i() * dt
    }

    #[test]
    fn h_matches_finite_differences() {
        for &(n, k) in &[(1, 1), (2, 1), (2, 2)] {
            let d = (h_apply(n, k, 1.0, 0.7).unwrap() - h_by_differences(n, k, 1.0, 0.7)).norm();
            assert!(d < 1e-8, "({n},{k}) {d}");
        }
        for n in 0..6usize {
            for k in -(n as i32)..=(n as i32) {
                for &t in &[0.05, 0.3, 1.5, 2.9, PI - 0.05] {
                    let d =
                        (h_apply(n, k, t, 2.2).unwrap() - h_by_differences(n, k, t, 2.2)).norm();
                    assert!(d < 1e-7, "({n},{k}) theta={t} {d}");
                }
            }
        }
    }

    #[test]
    fn h_finite_at_poles() {
        for n in 0..6usize {
            for k in -(n as i32)..=(n as i32) {
                for t in [0.0, PI] {
                    let h = h_apply(n, k, t, 0.3).unwrap();
                    assert!(h.re.is_finite() && h.im.is_finite());
                    let near = h_apply(n, k, if t == 0.0 { 1e-7 } else { PI - 1e-7 }, 0.3).unwrap();
                    assert!((h - near).norm() < 1e-5);
                }
            }
        }
    }

    #[test]
    fn k_of_constant() {
        let w = Complex64::new(0.7, -0.2);
        let t = 0.9;
        let kw = k_apply(|_, _| w, t, 0.1).unwrap();
        assert!((kw - w * (t.cos() / t.sin())).norm() < 1e-12);
    }

    #[test]
    fn k_of_h_y10() {
        // w = H Y_1^0 = -i c sin θ, so K w = -2 i c cos θ
        let c = (3.0 / (4.0 * PI)).sqrt();
        let kw = k_apply(|t, p| h_apply(1, 0, t, p).unwrap(), 1.2, 0.3).unwrap();
        let expect = Complex64::new(0.0, -2.0 * c * 1.2f64.cos());
        assert!((kw - expect).norm() < 1e-8);
    }

    #[test]
    fn k_of_azimuthal_mode() {
        // w = e^{iφ} sin θ: K w = e^{iφ}(2 cos θ - 1)
        let w = |t: f64, p: f64| Complex64::from_polar(t.sin(), p);
        for &(t, p) in &[(0.4, 0.2), (1.3, 2.5), (2.6, 4.0)] {
            let kw = k_apply(w, t, p).unwrap();
            let expect = Complex64::from_polar(1.0, p) * (2.0 * t.cos() - 1.0);
            assert!((kw - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn k_rejects_poles() {
        assert!(matches!(
            k_apply(|_, _| Complex64::new(1.0, 0.0), 0.0, 0.0),
            Err(Error::PoleEvaluation { .. })
        ));
    }

    #[test]
    fn index_error() {
        assert_eq!(
            sph_harmonic(1, 2, 0.0, 0.0),
            Err(Error::HarmonicIndex { n: 1, k: 2 })
        );
        assert!(RealHarmonic::new(2, -3).is_err());
    }

    #[test]
    fn real_harmonics_match_complex_parts() {
        let r2 = core::f64::consts::SQRT_2;
        for n in 1..5usize {
            for k in 1..=(n as i32) {
                let (t, p) = (0.7, 1.9);
                let y = sph_harmonic(n, k, t, p).unwrap() * cs_phase(k);
                let c = RealHarmonic::new(n, k).unwrap().eval(t, p);
                let s = RealHarmonic::new(n, -k).unwrap().eval(t, p);
                assert!((c.value - r2 * y.re).abs() < 1e-14);
                assert!((s.value - r2 * y.im).abs() < 1e-14);
            }
        }
    }
}
