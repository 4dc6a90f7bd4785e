//! Scalar special functions: spherical Bessel functions and their zeros, spherical
//! harmonics, the angular operators `H` and `K`, and the line integral `Φ_n`.

mod bessel;
mod harmonics;
mod phi;
mod zeros;

pub use bessel::{psi, psi_over_z, psi_prime, MAX_ORDER, SERIES_THRESHOLD};
pub use harmonics::{
    h_apply, k_apply, k_apply_partials, legendre, sph_harmonic, AngularSample, Legendre,
    RealHarmonic,
};
pub use phi::{phi_closed, phi_integral};
pub use zeros::{
    bessel_prime_zero, bessel_zero, zeros, ZeroKind, ZeroTable, MAX_ZERO_INDEX, ZERO_TOLERANCE,
};

pub(crate) use bessel::{sph_j, sph_j_over_z, sph_j_prime};
