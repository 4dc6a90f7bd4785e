use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::eigenbasis::BallDomain;
use crate::error::{Error, Result};

/// Default node counts `(N_r, N_θ, N_φ)`, enough for bases up to `n, m <= 4`.
pub const DEFAULT_COUNTS: (usize, usize, usize) = (48, 48, 64);

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(count: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        // Tricomi initial guess, descending in i
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(count, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(count, x);
        if d.is_finite() {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

fn legendre_and_derivative(count: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if count == 0 {
        return (1.0, 0.0);
    }
    for l in 2..=count {
        let p2 = ((2 * l - 1) as f64 * x * p1 - (l - 1) as f64 * p0) / l as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, count as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// One quadrature node of the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
    pub position: [f64; 3],
}

/// Tensor-product quadrature on the ball: Gauss–Legendre in `r` on `(0, R)` with the
/// `r²` Jacobian folded into the weights, Gauss–Legendre in `cos θ`, and the uniform
/// trapezoidal rule in `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    radius: f64,
    radial: Vec<(f64, f64)>,
    polar: Vec<(f64, f64)>,
    n_phi: usize,
}

impl QuadratureGrid {
    pub fn new(domain: BallDomain, n_r: usize, n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_r == 0 || n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidConfig("quadrature counts must be positive"));
        }
        let radius = domain.radius();
        let radial = gauss_legendre(n_r)
            .into_iter()
            .map(|(x, w)| {
                let r = 0.5 * radius * (x + 1.0);
                (r, 0.5 * radius * w * r * r)
            })
            .collect();
        // ascending θ: descending cos θ
        let polar = gauss_legendre(n_theta)
            .into_iter()
            .rev()
            .map(|(x, w)| (x.acos(), w))
            .collect();
        Ok(Self {
            radius,
            radial,
            polar,
            n_phi,
        })
    }

    pub fn with_defaults(domain: BallDomain) -> Self {
        let (a, b, c) = DEFAULT_COUNTS;
        Self::new(domain, a, b, c).expect("default counts are positive")
    }

    /// Grid with every count doubled.
    pub fn refined(&self) -> Self {
        let (a, b, c) = self.counts();
        Self::new(
            BallDomain::new(self.radius).expect("valid"),
            2 * a,
            2 * b,
            2 * c,
        )
        .expect("counts are positive")
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.radial.len(), self.polar.len(), self.n_phi)
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.polar.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(r, weight)` with the `r²` Jacobian included.
    pub fn radial(&self) -> &[(f64, f64)] {
        &self.radial
    }

    /// `(θ, weight)` of the rule in `cos θ`.
    pub fn polar(&self) -> &[(f64, f64)] {
        &self.polar
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    pub fn phi_weight(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    /// Nodes in `(r, θ, φ)` row-major order.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        let wphi = self.phi_weight();
        self.radial.iter().flat_map(move |&(r, wr)| {
            self.polar.iter().flat_map(move |&(theta, wt)| {
                let (st, ct) = theta.sin_cos();
                (0..self.n_phi).map(move |j| {
                    let phi = self.phi(j);
                    let (sp, cp) = phi.sin_cos();
                    Node {
                        r,
                        theta,
                        phi,
                        weight: wr * wt * wphi,
                        position: [r * st * cp, r * st * sp, r * ct],
                    }
                })
            })
        })
    }

    pub fn volume(&self) -> f64 {
        self.nodes().map(|n| n.weight).sum()
    }
}
