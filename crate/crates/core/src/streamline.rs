//! Field lines `dx/ds = u(x)/|u(x)|` integrated with classical RK4 in arc length.

use alloc::vec::Vec;

use crate::eigenbasis::BallDomain;
use crate::error::{Error, Result};
use crate::field::{norm, scale, VectorField};

/// Speed below which the integrator treats the field as stationary.
pub const STAGNATION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    MaxSteps,
    LeftBall,
    Stagnation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Arc length and position of every accepted point, seed first.
    pub points: Vec<(f64, [f64; 3])>,
    pub stop: StopReason,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> [f64; 3] {
        self.points.last().map(|p| p.1).unwrap_or([0.0; 3])
    }
}

fn direction<F: VectorField + ?Sized>(field: &F, x: [f64; 3]) -> Option<[f64; 3]> {
    let u = field.eval(x);
    let s = norm(u);
    if s < STAGNATION || !s.is_finite() {
        None
    } else {
        Some(scale(u, 1.0 / s))
    }
}

fn axpy(x: [f64; 3], a: f64, d: [f64; 3]) -> [f64; 3] {
    [x[0] + a * d[0], x[1] + a * d[1], x[2] + a * d[2]]
}

/// Trace from `seed` with arc-length `step` for at most `max_steps` steps. The trace
/// stops before the first point that would leave the closed ball, and at points where
/// `|u| < STAGNATION`.
pub fn trace<F: VectorField + ?Sized>(
    field: &F,
    seed: [f64; 3],
    step: f64,
    max_steps: usize,
    domain: &BallDomain,
) -> Result<Trace> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidConfig("trace step must be positive"));
    }
    if !seed.iter().all(|c| c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let r = norm(seed);
    if r >= domain.radius() {
        return Err(Error::OutsideBall {
            r,
            radius: domain.radius(),
        });
    }
    let mut points = Vec::with_capacity(max_steps.min(1 << 20) + 1);
    points.push((0.0, seed));
    let mut x = seed;
    for i in 0..max_steps {
        let Some(k1) = direction(field, x) else {
            return Ok(Trace {
                points,
                stop: StopReason::Stagnation,
            });
        };
        let stage = |x: [f64; 3]| direction(field, x);
        let Some(k2) = stage(axpy(x, 0.5 * step, k1)) else {
            return Ok(Trace {
                points,
                stop: StopReason::Stagnation,
            });
        };
        let Some(k3) = stage(axpy(x, 0.5 * step, k2)) else {
            return Ok(Trace {
                points,
                stop: StopReason::Stagnation,
            });
        };
        let Some(k4) = stage(axpy(x, step, k3)) else {
            return Ok(Trace {
                points,
                stop: StopReason::Stagnation,
            });
        };
        let mut next = x;
        for c in 0..3 {
            next[c] += step / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if norm(next) > domain.radius() {
            return Ok(Trace {
                points,
                stop: StopReason::LeftBall,
            });
        }
        x = next;
        points.push(((i + 1) as f64 * step, x));
    }
    Ok(Trace {
        points,
        stop: StopReason::MaxSteps,
    })
}

/// `Ψ = r sin θ u_φ / λ`, the flux function of an axisymmetric field with
/// `rot u = λu`. Constant along its field lines.
pub fn flux_function<F: VectorField + ?Sized>(field: &F, lambda: f64, x: [f64; 3]) -> f64 {
    let u = field.eval(x);
    // r sin θ · u_φ = x u_y − y u_x
    (x[0] * u[1] - x[1] * u[0]) / lambda
}

/// `max |Ψ(x_i) − Ψ(x_0)| / |Ψ(x_0)|` along a trace.
pub fn flux_drift<F: VectorField + ?Sized>(field: &F, lambda: f64, trace: &Trace) -> f64 {
    let Some(&(_, x0)) = trace.points.first() else {
        return 0.0;
    };
    let psi0 = flux_function(field, lambda, x0);
    let worst = trace
        .points
        .iter()
        .map(|&(_, x)| (flux_function(field, lambda, x) - psi0).abs())
        .fold(0.0, f64::max);
    if psi0 == 0.0 {
        worst
    } else {
        worst / psi0.abs()
    }
}
