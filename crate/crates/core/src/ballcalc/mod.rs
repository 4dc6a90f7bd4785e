//! Numerical calculus on the ball: quadrature, inner products, finite-difference
//! operators, and residual reports that check the closed-form eigenfields
//! independently of the formulas used to build them.

mod fd;
mod quadrature;
mod verify;

use alloc::vec::Vec;

use crate::eigenbasis::{cartesian_to_spherical, EigenRecord};
use crate::field::VectorField;

pub use fd::{fd_curl, fd_div, fd_grad, Differencer, DEFAULT_STEP};
pub use quadrature::{gauss_legendre, Node, QuadratureGrid, DEFAULT_COUNTS};
pub use verify::{
    compatibility_residuals, dirichlet_residual, gram_defect, gram_matrix, verify_adjointness,
    verify_eigenpair, CompatibilityReport, DirichletReport, ResidualReport, VerifyConfig,
    DEFAULT_SAMPLES, SMALL_FIELD,
};

/// `(f, g) = ∫_B f·g dx` by quadrature.
pub fn inner_product<F, G>(f: &F, g: &G, grid: &QuadratureGrid) -> f64
where
    F: VectorField + ?Sized,
    G: VectorField + ?Sized,
{
    grid.nodes()
        .map(|node| node.weight * crate::field::dot(f.eval(node.position), g.eval(node.position)))
        .sum()
}

/// A vector field sampled at every node of a grid, stored as spherical components
/// in node order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    values: Vec<[f64; 3]>,
}

impl GridField {
    pub fn zeros(len: usize) -> Self {
        Self {
            values: alloc::vec![[0.0; 3]; len],
        }
    }

    /// Wraps spherical-component samples given in node order.
    pub fn from_values(values: Vec<[f64; 3]>) -> Self {
        Self { values }
    }

    /// `self += s·other`, node by node.
    pub fn add_scaled(&mut self, other: &GridField, s: f64) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            for i in 0..3 {
                a[i] += s * b[i];
            }
        }
    }

    pub fn values(&self) -> &[[f64; 3]] {
        &self.values
    }

    /// `∫_B u·v dx`; both samples must come from `grid`.
    pub fn dot(&self, other: &GridField, grid: &QuadratureGrid) -> f64 {
        debug_assert_eq!(self.values.len(), grid.len());
        grid.nodes()
            .zip(self.values.iter().zip(&other.values))
            .map(|(node, (a, b))| node.weight * crate::field::dot(*a, *b))
            .sum()
    }

    pub fn norm(&self, grid: &QuadratureGrid) -> f64 {
        num_traits::Float::sqrt(self.dot(self, grid))
    }

    /// `self − other`, node by node.
    pub fn sub(&self, other: &GridField) -> GridField {
        GridField {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| crate::field::sub(*a, *b))
                .collect(),
        }
    }
}

/// Sample a Cartesian field at the nodes, rotating into the spherical frame.
pub fn sample_field<F: VectorField + ?Sized>(f: &F, grid: &QuadratureGrid) -> GridField {
    GridField {
        values: grid
            .nodes()
            .map(|n| cartesian_to_spherical(f.eval(n.position), n.theta, n.phi))
            .collect(),
    }
}

/// Sample a basis field at the nodes from its radial and angular factors.
pub fn sample_eigenfield(rec: &EigenRecord, grid: &QuadratureGrid) -> GridField {
    let angular: Vec<_> = angular_table(rec, grid);
    let mut values = Vec::with_capacity(grid.len());
    for &(r, _) in grid.radial() {
        let p = rec.profile(r);
        values.extend(angular.iter().map(|y| p.combine(y, rec.c())));
    }
    GridField { values }
}

/// Angular samples of the record's harmonic in `(θ, φ)` node order.
pub(crate) fn angular_table(
    rec: &EigenRecord,
    grid: &QuadratureGrid,
) -> Vec<crate::specfun::AngularSample> {
    let y = rec.harmonic();
    let n_phi = grid.counts().2;
    grid.polar()
        .iter()
        .flat_map(|&(theta, _)| (0..n_phi).map(move |j| y.eval(theta, grid.phi(j))))
        .collect()
}
