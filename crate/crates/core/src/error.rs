use core::fmt;

use crate::eigenbasis::{MultiIndex, Operator};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which half of the coefficient space a domain error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Coefficients over the grad-div (potential) eigenfields.
    Potential,
    /// Coefficients over the curl (vortex) eigenfields.
    Vortex,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Potential => f.write_str("potential"),
            Part::Vortex => f.write_str("vortex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Bessel order outside the supported range.
    OrderRange {
        n: usize,
        max: usize,
    },
    /// Zero index outside the table capacity.
    ZeroCapacity {
        n: usize,
        m: usize,
    },
    /// `|k| > n` for a spherical harmonic.
    HarmonicIndex {
        n: usize,
        k: i32,
    },
    /// Order not supported by the requested function.
    UnsupportedOrder {
        n: usize,
    },
    NonFinite,
    /// Derivative requested at a pole of the sphere.
    PoleEvaluation {
        theta: f64,
    },
    /// A multi-index that violates the admissibility rules.
    InvalidIndex(MultiIndex),
    /// Operation requires a different operator kind.
    OperatorKind {
        expected: Operator,
        found: Operator,
    },
    InvalidRadius(f64),
    OutsideBall {
        r: f64,
        radius: f64,
    },
    /// Angular coordinate outside its range.
    AngleRange {
        theta: f64,
        phi: f64,
    },
    /// Vector carries the wrong frame tag.
    FrameMismatch,
    /// A quantity moved by more than `tolerance` under grid refinement.
    Resolution {
        quantity: &'static str,
        change: f64,
        tolerance: f64,
    },
    /// A finite-difference stencil reaches outside the ball.
    Stencil {
        reach: f64,
        radius: f64,
    },
    /// Unsupported finite-difference order.
    StencilOrder(usize),
    /// Operator applied to coefficients with a nonzero entry in the wrong part.
    Domain {
        part: Part,
        index: MultiIndex,
    },
    /// Resolvent shift coincides with a point of the truncated spectrum.
    SpectrumCollision {
        index: MultiIndex,
        shift: f64,
    },
    /// Two coefficient vectors built on different truncations or radii.
    Incompatible,
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderRange { n, max } => {
                write!(f, "Bessel order {n} outside supported range 0..={max}")
            }
            Error::ZeroCapacity { n, m } => {
                write!(f, "zero ({n}, {m}) exceeds zero-table capacity")
            }
            Error::HarmonicIndex { n, k } => write!(f, "harmonic index |k|={k} exceeds degree {n}"),
            Error::UnsupportedOrder { n } => write!(f, "order {n} is not supported here"),
            Error::NonFinite => f.write_str("non-finite argument"),
            Error::PoleEvaluation { theta } => write!(f, "cannot evaluate at pole theta={theta}"),
            Error::InvalidIndex(idx) => write!(f, "inadmissible multi-index {idx}"),
            Error::OperatorKind { expected, found } => {
                write!(f, "expected a {expected} index, found {found}")
            }
            Error::InvalidRadius(r) => {
                write!(f, "ball radius must be positive and finite, got {r}")
            }
            Error::OutsideBall { r, radius } => {
                write!(f, "point at r={r} lies outside the ball of radius {radius}")
            }
            Error::AngleRange { theta, phi } => {
                write!(f, "angles out of range: theta={theta}, phi={phi}")
            }
            Error::FrameMismatch => f.write_str("vector frame does not match the operation"),
            Error::Resolution {
                quantity,
                change,
                tolerance,
            } => write!(
                f,
                "{quantity} changed by {change:e} under grid refinement (tolerance {tolerance:e})"
            ),
            Error::Stencil { reach, radius } => {
                write!(
                    f,
                    "stencil reaches r={reach}, outside the ball of radius {radius}"
                )
            }
            Error::StencilOrder(o) => write!(f, "unsupported finite-difference order {o}"),
            Error::Domain { part, index } => {
                write!(
                    f,
                    "operator domain error: nonzero {part} coefficient at {index}"
                )
            }
            Error::SpectrumCollision { index, shift } => {
                write!(
                    f,
                    "shift {shift} collides with the spectrum point of {index}"
                )
            }
            Error::Incompatible => f.write_str("coefficient vectors have different bases"),
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl core::error::Error for Error {}
