//! Truncated expansions over the normalized grad-div basis `{q_κ}` (potential part)
//! and curl basis `{q^±_κ}` (vortex part), which together are complete and
//! orthonormal in `L₂(B)`. In these coordinates `𝒩_d` and `S` are diagonal, so
//! powers, inverses and resolvents act term by term.

mod analysis;
mod operators;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::ballcalc::QuadratureGrid;
use crate::eigenbasis::{enumerate, normalize, BallDomain, EigenRecord, MultiIndex, Operator};
use crate::error::{Error, Part, Result};
use crate::specfun::{MAX_ORDER, MAX_ZERO_INDEX};

pub use analysis::{
    analyze, analyze_sampled, synthesize, synthesize_on_grid, Synthesis, ANALYSIS_TOLERANCE,
    ZERO_CUTOFF,
};
pub use operators::{
    apply_nd, apply_nd_inverse, apply_nd_shifted, apply_s, apply_s_inverse, project_a, project_v,
    quotient_harmonic, resolvent_nd, scale_norm, solve_curl_power, solve_graddiv_power, Scale,
    ScaleNorm, Solution, HARMONIC_QUOTIENT_TRIVIAL,
};

/// Largest `n` and `m` kept in an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Truncation {
    n_max: u32,
    m_max: u32,
}

impl Truncation {
    pub fn new(n_max: u32, m_max: u32) -> Result<Self> {
        if n_max == 0 || m_max == 0 {
            return Err(Error::InvalidConfig("truncation orders must be at least 1"));
        }
        if n_max as usize > MAX_ORDER || m_max as usize > MAX_ZERO_INDEX {
            return Err(Error::ZeroCapacity {
                n: n_max as usize,
                m: m_max as usize,
            });
        }
        Ok(Self { n_max, m_max })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }
}

/// Normalized basis fields of a truncation: grad-div fields with `0 <= n <= n_max`
/// and curl fields of both signs with `1 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis {
    domain: BallDomain,
    truncation: Truncation,
    potential: Vec<EigenRecord>,
    vortex: Vec<EigenRecord>,
}

impl SpectralBasis {
    /// Normalizes every basis field on `grid`.
    pub fn new(domain: BallDomain, truncation: Truncation, grid: &QuadratureGrid) -> Result<Self> {
        let build = |op: Operator| -> Result<Vec<EigenRecord>> {
            enumerate(op, truncation.n_max, truncation.m_max, &domain)?
                .into_iter()
                .map(|idx| normalize(&EigenRecord::new(idx, domain)?, grid))
                .collect()
        };
        Ok(Self {
            domain,
            truncation,
            potential: build(Operator::GradDiv)?,
            vortex: build(Operator::Curl)?,
        })
    }

    pub fn domain(&self) -> BallDomain {
        self.domain
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn potential(&self) -> &[EigenRecord] {
        &self.potential
    }

    pub fn vortex(&self) -> &[EigenRecord] {
        &self.vortex
    }

    pub fn records(&self) -> impl Iterator<Item = &EigenRecord> {
        self.potential.iter().chain(&self.vortex)
    }

    pub fn record(&self, index: &MultiIndex) -> Option<&EigenRecord> {
        self.records().find(|r| r.index() == *index)
    }

    pub fn zeros(&self) -> SpectralCoefficients {
        let terms = |recs: &[EigenRecord]| {
            recs.iter()
                .map(|r| Term {
                    index: r.index(),
                    eigenvalue: r.eigenvalue(),
                    value: 0.0,
                })
                .collect()
        };
        SpectralCoefficients {
            domain: self.domain,
            truncation: self.truncation,
            a: terms(&self.potential),
            b: terms(&self.vortex),
        }
    }

    /// Coefficient vector of the single basis field `index`.
    pub fn unit(&self, index: &MultiIndex) -> Result<SpectralCoefficients> {
        let mut c = self.zeros();
        c.set(index, 1.0)?;
        Ok(c)
    }
}

/// One coefficient with the eigenvalue of its basis field (`−ν²` or signed `λ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub index: MultiIndex,
    pub eigenvalue: f64,
    pub value: f64,
}

/// Coefficients `a_κ = (f, q_κ)` and `b^±_κ = (f, q^±_κ)` on a truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    domain: BallDomain,
    truncation: Truncation,
    a: Vec<Term>,
    b: Vec<Term>,
}

impl SpectralCoefficients {
    pub fn domain(&self) -> BallDomain {
        self.domain
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Potential (grad-div) part.
    pub fn a(&self) -> &[Term] {
        &self.a
    }

    /// Vortex (curl) part.
    pub fn b(&self) -> &[Term] {
        &self.b
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.a.iter().chain(&self.b)
    }

    fn part_mut(&mut self, index: &MultiIndex) -> &mut Vec<Term> {
        match index.operator() {
            Operator::GradDiv => &mut self.a,
            Operator::Curl => &mut self.b,
        }
    }

    pub fn get(&self, index: &MultiIndex) -> Option<f64> {
        self.terms().find(|t| t.index == *index).map(|t| t.value)
    }

    pub fn set(&mut self, index: &MultiIndex, value: f64) -> Result<()> {
        let term = self
            .part_mut(index)
            .iter_mut()
            .find(|t| t.index == *index)
            .ok_or(Error::InvalidIndex(*index))?;
        term.value = value;
        Ok(())
    }

    /// `ℓ²` norm of all coefficients.
    pub fn norm(&self) -> f64 {
        self.terms().map(|t| t.value * t.value).sum::<f64>().sqrt()
    }

    /// Largest entrywise difference; vectors must share a basis.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .terms()
            .zip(other.terms())
            .map(|(x, y)| (x.value - y.value).abs())
            .fold(0.0, f64::max))
    }

    /// Entrywise `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, o) in out.a.iter_mut().chain(out.b.iter_mut()).zip(other.terms()) {
            t.value += o.value;
        }
        Ok(out)
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        let same_terms = self.a.len() == other.a.len()
            && self.b.len() == other.b.len()
            && self
                .terms()
                .zip(other.terms())
                .all(|(x, y)| x.index == y.index);
        if self.truncation != other.truncation || self.domain != other.domain || !same_terms {
            return Err(Error::Incompatible);
        }
        Ok(())
    }

    /// First exactly nonzero coefficient of `part`, if any.
    pub(crate) fn first_nonzero(&self, part: Part) -> Option<MultiIndex> {
        let terms = match part {
            Part::Potential => &self.a,
            Part::Vortex => &self.b,
        };
        terms.iter().find(|t| t.value != 0.0).map(|t| t.index)
    }

    pub(crate) fn map_part(&self, part: Part, f: impl Fn(&Term) -> f64) -> Self {
        let mut out = self.clone();
        let terms = match part {
            Part::Potential => &mut out.a,
            Part::Vortex => &mut out.b,
        };
        for t in terms.iter_mut() {
            t.value = f(t);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbasis::Sign;

    #[test]
    fn truncation_limits() {
        assert!(Truncation::new(0, 1).is_err());
        assert!(Truncation::new(1, 0).is_err());
        assert!(Truncation::new(41, 1).is_err());
        assert!(Truncation::new(4, 4).is_ok());
    }

    #[test]
    fn basis_layout() {
        let d = BallDomain::unit();
        let grid = QuadratureGrid::with_defaults(d);
        let basis = SpectralBasis::new(d, Truncation::new(2, 2).unwrap(), &grid).unwrap();
        assert_eq!(basis.potential().len(), (1 + 3 + 5) * 2);
        assert_eq!(basis.vortex().len(), 2 * (3 + 5) * 2);
        let idx = MultiIndex::curl(2, 1, -2, Sign::Minus).unwrap();
        let u = basis.unit(&idx).unwrap();
        assert_eq!(u.get(&idx), Some(1.0));
        assert_eq!(u.norm(), 1.0);
        let outside = MultiIndex::curl(3, 1, 0, Sign::Plus).unwrap();
        assert!(basis.zeros().clone().set(&outside, 1.0).is_err());
    }

    #[test]
    fn incompatible_vectors() {
        let d = BallDomain::unit();
        let grid = QuadratureGrid::with_defaults(d);
        let a = SpectralBasis::new(d, Truncation::new(1, 1).unwrap(), &grid).unwrap();
        let b = SpectralBasis::new(d, Truncation::new(1, 2).unwrap(), &grid).unwrap();
        assert_eq!(a.zeros().max_abs_diff(&b.zeros()), Err(Error::Incompatible));
    }
}
