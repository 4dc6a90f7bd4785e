//! Spherical Bessel functions of the first kind,
//! `psi_n(z) = (-z)^n (d/(z dz))^n (sin z / z) = sqrt(pi/(2z)) J_{n+1/2}(z)`.
//!
//! Evaluation strategy:
//! * `|z| < 0.01 (2n+1)`: four-term power series, `psi_n(z) ~ z^n / (2n+1)!!`.
//! * `|z| >= n`: upward recurrence from `psi_0`, `psi_1` (stable in this regime).
//! * otherwise: Miller's downward recurrence normalized against `psi_0` or `psi_1`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Highest order accepted by the public functions.
pub const MAX_ORDER: usize = 40;

/// Ratio applied to `2n+1` below which the power series is used.
pub const SERIES_THRESHOLD: f64 = 1e-2;

fn check(n: usize, z: f64) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::OrderRange { n, max: MAX_ORDER });
    }
    if !z.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `psi_n(z)`.
pub fn psi(n: usize, z: f64) -> Result<f64> {
    check(n, z)?;
    Ok(sph_j(n, z))
}

/// `d psi_n / dz`.
pub fn psi_prime(n: usize, z: f64) -> Result<f64> {
    check(n, z)?;
    Ok(sph_j_prime(n, z))
}

/// `psi_n(z) / z`, regular at the origin for `n >= 1`.
pub fn psi_over_z(n: usize, z: f64) -> Result<f64> {
    check(n, z)?;
    if n == 0 {
        return Err(Error::UnsupportedOrder { n });
    }
    Ok(sph_j_over_z(n, z))
}

pub(crate) fn double_factorial_odd(n: usize) -> f64 {
    // (2n+1)!!
    (1..=n).fold(1.0, |acc, i| acc * (2 * i + 1) as f64)
}

/// Power series `z^p / (2n+1)!! * sum_j (-z^2/2)^j / (j! prod_i (2n+2i+1))`, where the
/// caller picks `p = n` (the function) or `p = n - 1` (the function over `z`).
fn series(n: usize, z: f64, power: usize) -> f64 {
    let z2 = -0.5 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..4 {
        term *= z2 / (j as f64 * (2 * n + 2 * j + 1) as f64);
        sum += term;
    }
    z.powi(power as i32) / double_factorial_odd(n) * sum
}

fn in_series_range(n: usize, z: f64) -> bool {
    z.abs() < SERIES_THRESHOLD * (2 * n + 1) as f64
}

pub(crate) fn sph_j(n: usize, z: f64) -> f64 {
    if in_series_range(n, z) {
        return series(n, z, n);
    }
    let x = z.abs();
    let value = if x >= n as f64 {
        upward(n, x)
    } else {
        downward(n, x)
    };
    if z < 0.0 && n % 2 == 1 {
        -value
    } else {
        value
    }
}

pub(crate) fn sph_j_over_z(n: usize, z: f64) -> f64 {
    debug_assert!(n >= 1);
    if in_series_range(n, z) {
        return series(n, z, n - 1);
    }
    sph_j(n, z) / z
}

pub(crate) fn sph_j_prime(n: usize, z: f64) -> f64 {
    if n == 0 {
        return -sph_j(1, z);
    }
    let nf = n as f64;
    (nf * sph_j(n - 1, z) - (nf + 1.0) * sph_j(n + 1, z)) / (2.0 * nf + 1.0)
}

/// Second derivative from the spherical Bessel equation.
pub(crate) fn sph_j_second(n: usize, z: f64) -> f64 {
    let nf = n as f64;
    -2.0 / z * sph_j_prime(n, z) - (1.0 - nf * (nf + 1.0) / (z * z)) * sph_j(n, z)
}

fn upward(n: usize, x: f64) -> f64 {
    let (s, c) = (x.sin(), x.cos());
    let j0 = s / x;
    if n == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for k in 1..n {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn downward(n: usize, x: f64) -> f64 {
    let start = n + 30 + (10.0 * (n as f64).sqrt()) as usize + x as usize;
    // `cur` holds f_k and `above` holds f_{k+1}
    let mut above = 0.0;
    let mut cur = 1e-250;
    let mut at_n = 0.0;
    for k in (1..=start).rev() {
        let below = (2 * k + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        if k - 1 == n {
            at_n = cur;
        }
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            above *= 1e-200;
            at_n *= 1e-200;
        }
    }
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    let scale = if j0.abs() >= j1.abs() {
        j0 / cur
    } else {
        j1 / above
    };
    at_n * scale
}
