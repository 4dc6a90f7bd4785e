//! Eigenvalues and eigenfields of curl and grad-div on a ball of radius `R`.
//!
//! Curl eigenvalues are `±ρ_{n,m}/R` (zeros of `ψ_n`), grad-div eigenvalues are
//! `-(α_{n,m}/R)²` (zeros of `ψ_n'`); each has multiplicity `2n+1`. Angular dependence
//! uses the real orthonormal harmonics of [`RealHarmonic`](crate::specfun::RealHarmonic),
//! so every stored basis field is real.

mod fields;
mod spectrum;

use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub use fields::{
    eval_axisym_110, eval_curl_field, eval_graddiv_field, normalize, EigenRecord, RadialProfile,
    NORMALIZATION_TOLERANCE,
};
pub use spectrum::{curl_eigenvalue, enumerate, enumerate_mixed, graddiv_eigenvalue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Curl,
    GradDiv,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Curl => "curl",
            Operator::GradDiv => "graddiv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `κ = (n, m, k)` plus operator kind and, for curl, the eigenvalue sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    operator: Operator,
    n: u32,
    m: u32,
    k: i32,
    sign: Sign,
}

impl MultiIndex {
    /// Curl index; requires `n >= 1`, `m >= 1`, `|k| <= n`.
    pub fn curl(n: u32, m: u32, k: i32, sign: Sign) -> Result<Self> {
        let idx = Self {
            operator: Operator::Curl,
            n,
            m,
            k,
            sign,
        };
        if n == 0 || m == 0 || k.unsigned_abs() > n {
            return Err(Error::InvalidIndex(idx));
        }
        Ok(idx)
    }

    /// Grad-div index; requires `m >= 1`, `|k| <= n`.
    pub fn graddiv(n: u32, m: u32, k: i32) -> Result<Self> {
        let idx = Self {
            operator: Operator::GradDiv,
            n,
            m,
            k,
            sign: Sign::Plus,
        };
        if m == 0 || k.unsigned_abs() > n {
            return Err(Error::InvalidIndex(idx));
        }
        Ok(idx)
    }

    pub fn new(operator: Operator, n: u32, m: u32, k: i32, sign: Sign) -> Result<Self> {
        match operator {
            Operator::Curl => Self::curl(n, m, k, sign),
            Operator::GradDiv => Self::graddiv(n, m, k),
        }
    }

    pub fn operator(&self) -> Operator {
        self.operator
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// Eigenvalue sign; always `Plus` for grad-div.
    pub fn sign(&self) -> Sign {
        self.sign
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.operator {
            Operator::Curl => write!(f, "curl({},{},{},{})", self.n, self.m, self.k, self.sign),
            Operator::GradDiv => write!(f, "graddiv({},{},{})", self.n, self.m, self.k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallDomain {
    radius: f64,
}

impl BallDomain {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { radius })
    }

    pub fn unit() -> Self {
        Self { radius: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn volume(&self) -> f64 {
        4.0 * PI * self.radius.powi(3) / 3.0
    }

    /// Dimensions of the harmonic subspaces (grad-div kernel among potential fields,
    /// curl kernel among solenoidal fields). Both are empty on a ball.
    pub fn harmonic_dimensions(&self) -> (usize, usize) {
        (0, 0)
    }

    pub fn contains(&self, x: [f64; 3]) -> bool {
        crate::field::norm(x) <= self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::NonFinite);
        }
        if r < 0.0 {
            return Err(Error::OutsideBall { r, radius: 0.0 });
        }
        if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::AngleRange { theta, phi });
        }
        Ok(Self { r, theta, phi })
    }

    /// Spherical coordinates of a Cartesian point; `φ = 0` on the axis.
    pub fn from_cartesian(x: [f64; 3]) -> Self {
        let rho = x[0].hypot(x[1]);
        let r = rho.hypot(x[2]);
        let theta = rho.atan2(x[2]);
        let mut phi = x[1].atan2(x[0]);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { r, theta, phi }
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }

    /// Orthonormal frame `(i_r, i_θ, i_φ)` in Cartesian components.
    pub fn frame(&self) -> [[f64; 3]; 3] {
        frame(self.theta, self.phi)
    }
}

pub(crate) fn frame(theta: f64, phi: f64) -> [[f64; 3]; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [
        [st * cp, st * sp, ct],
        [ct * cp, ct * sp, -st],
        [-sp, cp, 0.0],
    ]
}

pub(crate) fn spherical_to_cartesian(v: [f64; 3], theta: f64, phi: f64) -> [f64; 3] {
    let e = frame(theta, phi);
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = v[0] * e[0][i] + v[1] * e[1][i] + v[2] * e[2][i];
    }
    out
}

pub(crate) fn cartesian_to_spherical(v: [f64; 3], theta: f64, phi: f64) -> [f64; 3] {
    let e = frame(theta, phi);
    [
        crate::field::dot(v, e[0]),
        crate::field::dot(v, e[1]),
        crate::field::dot(v, e[2]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Spherical,
    Cartesian,
}

/// A vector sample tagged with its frame: `(u_r, u_θ, u_φ)` or `(u_x, u_y, u_z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalVector {
    pub components: [f64; 3],
    pub frame: Frame,
}

impl SphericalVector {
    pub fn spherical(u_r: f64, u_theta: f64, u_phi: f64) -> Self {
        Self {
            components: [u_r, u_theta, u_phi],
            frame: Frame::Spherical,
        }
    }

    pub fn cartesian(x: [f64; 3]) -> Self {
        Self {
            components: x,
            frame: Frame::Cartesian,
        }
    }

    pub fn norm(&self) -> f64 {
        crate::field::norm(self.components)
    }

    /// `u_φ + i u_θ`.
    pub fn tangential(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.components[2], self.components[1])
    }
}

/// Rotate a spherical-frame vector at `p` into Cartesian components. On the axis the
/// frame is the `φ = 0` one.
pub fn to_cartesian(v: SphericalVector, p: SphericalPoint) -> Result<SphericalVector> {
    if v.frame != Frame::Spherical {
        return Err(Error::FrameMismatch);
    }
    Ok(SphericalVector::cartesian(spherical_to_cartesian(
        v.components,
        p.theta,
        p.phi,
    )))
}

pub fn to_spherical(v: SphericalVector, p: SphericalPoint) -> Result<SphericalVector> {
    if v.frame != Frame::Cartesian {
        return Err(Error::FrameMismatch);
    }
    let [a, b, c] = cartesian_to_spherical(v.components, p.theta, p.phi);
    Ok(SphericalVector::spherical(a, b, c))
}
