//! Spectral toolkit for the curl and grad-div operators on a ball.
//!
//! * [`specfun`]: spherical Bessel functions, their zeros, spherical harmonics.
//! * [`eigenbasis`]: eigenvalues and closed-form eigenfields of curl and grad-div.
//! * [`ballcalc`]: ball quadrature, inner products, finite-difference operators and
//!   residual reports that check the analytic formulas numerically.
//! * [`spectral`]: coefficient-space projections, operator powers, inverses,
//!   resolvents and Sobolev-scale norms on truncated bases.
//! * [`streamline`]: unit-speed field-line tracing with RK4.
#![no_std]

// Float methods come from `num_traits::Float`. When any crate in the build links std
// the inherent f64 methods shadow them, so those imports are marked allow(unused).

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ballcalc;
pub mod eigenbasis;
mod error;
pub mod field;
pub mod specfun;
pub mod spectral;
pub mod streamline;

pub use error::{Error, Part, Result};
pub use field::{ScalarField, VectorField};
