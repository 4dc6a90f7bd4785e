use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{SpectralBasis, SpectralCoefficients};
use crate::ballcalc::{angular_table, sample_eigenfield, sample_field, GridField, QuadratureGrid};
use crate::eigenbasis::EigenRecord;
use crate::error::{Error, Result};
use crate::field::VectorField;

/// Largest coefficient change tolerated when the analysis grid is doubled.
pub const ANALYSIS_TOLERANCE: f64 = 1e-6;

/// Coefficients smaller than this are stored as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-14;

/// Per-radius angular moments of a sampled field against one harmonic `Y`:
/// `∫ f_r Y`, `∫ (f_θ ∂_θY + f_φ Y_φs)` and `∫ (f_θ Y_φs − f_φ ∂_θY)` over the sphere.
fn moments(samples: &GridField, rec: &EigenRecord, grid: &QuadratureGrid) -> [Vec<f64>; 3] {
    let table = angular_table(rec, grid);
    let wphi = grid.phi_weight();
    let n_phi = grid.counts().2;
    let weights: Vec<f64> = grid
        .polar()
        .iter()
        .flat_map(|&(_, w)| core::iter::repeat_n(w * wphi, n_phi))
        .collect();
    let per_shell = table.len();
    let mut out = [Vec::new(), Vec::new(), Vec::new()];
    for shell in samples.values().chunks(per_shell) {
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for ((f, y), w) in shell.iter().zip(&table).zip(&weights) {
            m0 += w * f[0] * y.value;
            m1 += w * (f[1] * y.d_theta + f[2] * y.d_phi_over_sin);
            m2 += w * (f[1] * y.d_phi_over_sin - f[2] * y.d_theta);
        }
        out[0].push(m0);
        out[1].push(m1);
        out[2].push(m2);
    }
    out
}

/// Projections of a field already sampled on `grid` (spherical components in node
/// order). No refinement check is possible here.
pub fn analyze_sampled(
    samples: &GridField,
    basis: &SpectralBasis,
    grid: &QuadratureGrid,
) -> Result<SpectralCoefficients> {
    if samples.values().len() != grid.len() {
        return Err(Error::InvalidConfig("sample count does not match the grid"));
    }
    if (grid.radius() - basis.domain().radius()).abs() > 1e-12 * basis.domain().radius() {
        return Err(Error::InvalidConfig(
            "grid radius differs from the basis ball",
        ));
    }
    let mut cache: BTreeMap<(usize, i32), [Vec<f64>; 3]> = BTreeMap::new();
    let mut out = basis.zeros();
    for (rec, term) in basis
        .records()
        .zip(out.a.iter_mut().chain(out.b.iter_mut()))
    {
        let y = rec.harmonic();
        let m = cache
            .entry((y.degree(), y.order()))
            .or_insert_with(|| moments(samples, rec, grid));
        let mut acc = 0.0;
        for (i, &(r, w)) in grid.radial().iter().enumerate() {
            let p = rec.profile(r);
            acc += w * (p.a * m[0][i] + p.b * m[1][i] + p.c * m[2][i]);
        }
        term.value = rec.c() * acc;
        if !term.value.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(out)
}

fn flush_small(mut c: SpectralCoefficients) -> SpectralCoefficients {
    for t in c.a.iter_mut().chain(c.b.iter_mut()) {
        if t.value.abs() < ZERO_CUTOFF {
            t.value = 0.0;
        }
    }
    c
}

/// `a_κ = (f, q_κ)`, `b^±_κ = (f, q^±_κ)` by quadrature on `grid`. Fails with a
/// resolution error if doubling the grid moves any coefficient by more than
/// [`ANALYSIS_TOLERANCE`]. Coefficients below [`ZERO_CUTOFF`] become exact zeros.
pub fn analyze<F: VectorField + ?Sized>(
    f: &F,
    basis: &SpectralBasis,
    grid: &QuadratureGrid,
) -> Result<SpectralCoefficients> {
    let coarse = analyze_sampled(&sample_field(f, grid), basis, grid)?;
    let fine_grid = grid.refined();
    let fine = analyze_sampled(&sample_field(f, &fine_grid), basis, &fine_grid)?;
    let change = coarse.max_abs_diff(&fine)?;
    if change.is_nan() || change > ANALYSIS_TOLERANCE {
        return Err(Error::Resolution {
            quantity: "spectral coefficient",
            change,
            tolerance: ANALYSIS_TOLERANCE,
        });
    }
    Ok(flush_small(coarse))
}

/// Pointwise partial sum `Σ a_κ q_κ + Σ b^±_κ q^±_κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    terms: Vec<(EigenRecord, f64)>,
}

impl VectorField for Synthesis {
    fn eval(&self, x: [f64; 3]) -> [f64; 3] {
        let mut acc = [0.0; 3];
        for (rec, v) in &self.terms {
            let u = rec.eval(x);
            for i in 0..3 {
                acc[i] += v * u[i];
            }
        }
        acc
    }
}

pub fn synthesize(c: &SpectralCoefficients, basis: &SpectralBasis) -> Result<Synthesis> {
    if c.truncation() != basis.truncation() || c.domain() != basis.domain() {
        return Err(Error::Incompatible);
    }
    let terms = basis
        .records()
        .zip(c.terms())
        .filter(|(_, t)| t.value != 0.0)
        .map(|(rec, t)| (*rec, t.value))
        .collect();
    Ok(Synthesis { terms })
}

/// The partial sum sampled at the nodes of `grid`, built from separable samples.
pub fn synthesize_on_grid(
    c: &SpectralCoefficients,
    basis: &SpectralBasis,
    grid: &QuadratureGrid,
) -> Result<GridField> {
    let s = synthesize(c, basis)?;
    let mut acc = GridField::zeros(grid.len());
    for (rec, v) in &s.terms {
        acc.add_scaled(&sample_eigenfield(rec, grid), *v);
    }
    Ok(acc)
}
