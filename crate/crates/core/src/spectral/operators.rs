#[allow(unused_imports)]
use num_traits::Float;

use super::SpectralCoefficients;
use crate::error::{Error, Part, Result};

/// The ball has no nonzero harmonic fields, so the quotient by them is the identity.
pub const HARMONIC_QUOTIENT_TRIVIAL: bool = true;

/// Identity on the ball; kept so callers can state the quotient explicitly.
pub fn quotient_harmonic(c: &SpectralCoefficients) -> SpectralCoefficients {
    c.clone()
}

/// Orthogonal projection onto the potential part (zeroes every `b`).
pub fn project_a(c: &SpectralCoefficients) -> SpectralCoefficients {
    c.map_part(Part::Vortex, |_| 0.0)
}

/// Orthogonal projection onto the vortex part (zeroes every `a`).
pub fn project_v(c: &SpectralCoefficients) -> SpectralCoefficients {
    c.map_part(Part::Potential, |_| 0.0)
}

fn require_only(c: &SpectralCoefficients, keep: Part) -> Result<()> {
    let other = match keep {
        Part::Potential => Part::Vortex,
        Part::Vortex => Part::Potential,
    };
    match c.first_nonzero(other) {
        Some(index) => Err(Error::Domain { part: other, index }),
        None => Ok(()),
    }
}

fn require_power(p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidConfig("operator power must be at least 1"));
    }
    Ok(())
}

/// `𝒩_d^p`: `a_κ ← (−ν_κ²)^p a_κ`. Defined only on the potential part.
pub fn apply_nd(c: &SpectralCoefficients, p: u32) -> Result<SpectralCoefficients> {
    require_power(p)?;
    require_only(c, Part::Potential)?;
    Ok(c.map_part(Part::Potential, |t| t.eigenvalue.powi(p as i32) * t.value))
}

/// `𝒩_d^{−p}`: `a_κ ← (−ν_κ²)^{−p} a_κ`.
pub fn apply_nd_inverse(c: &SpectralCoefficients, p: u32) -> Result<SpectralCoefficients> {
    require_power(p)?;
    require_only(c, Part::Potential)?;
    Ok(c.map_part(Part::Potential, |t| t.value / t.eigenvalue.powi(p as i32)))
}

/// `(𝒩_d + λ)`: `a_κ ← (−ν_κ² + λ) a_κ`.
pub fn apply_nd_shifted(c: &SpectralCoefficients, lambda: f64) -> Result<SpectralCoefficients> {
    require_only(c, Part::Potential)?;
    Ok(c.map_part(Part::Potential, |t| (t.eigenvalue + lambda) * t.value))
}

/// `(𝒩_d + λ)^{−1}`: `a_κ ← a_κ / (−ν_κ² + λ)`. Errors when `|λ|` is within
/// `max(1e-10·|λ|, 1e-12)` of some `ν_κ²` in the truncation. The pole is at
/// `λ = ν²`; `λ = −ν²` (a point of the spectrum itself) is refused as well, since
/// invertibility is only asserted for shifts off the spectrum.
pub fn resolvent_nd(c: &SpectralCoefficients, lambda: f64) -> Result<SpectralCoefficients> {
    require_only(c, Part::Potential)?;
    if !lambda.is_finite() {
        return Err(Error::NonFinite);
    }
    let guard = (1e-10 * lambda.abs()).max(1e-12);
    let near = |t: &&super::Term| {
        (t.eigenvalue + lambda).abs() < guard || (t.eigenvalue - lambda).abs() < guard
    };
    if let Some(t) = c.a().iter().find(near) {
        return Err(Error::SpectrumCollision {
            index: t.index,
            shift: lambda,
        });
    }
    Ok(c.map_part(Part::Potential, |t| t.value / (t.eigenvalue + lambda)))
}

/// `S^p`: `b^±_κ ← λ^p b^±_κ` with signed `λ`. Defined only on the vortex part.
pub fn apply_s(c: &SpectralCoefficients, p: u32) -> Result<SpectralCoefficients> {
    require_power(p)?;
    require_only(c, Part::Vortex)?;
    Ok(c.map_part(Part::Vortex, |t| t.eigenvalue.powi(p as i32) * t.value))
}

/// `S^{−p}`: `b^±_κ ← λ^{−p} b^±_κ`.
pub fn apply_s_inverse(c: &SpectralCoefficients, p: u32) -> Result<SpectralCoefficients> {
    require_power(p)?;
    require_only(c, Part::Vortex)?;
    Ok(c.map_part(Part::Vortex, |t| t.value / t.eigenvalue.powi(p as i32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Potential scale, weights `ν^{order}`.
    A,
    /// Vortex scale, weights `|λ|^{order}`.
    W,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleNorm {
    pub scale: Scale,
    pub order: i32,
    pub value: f64,
}

/// `‖f‖_{A^s}² = Σ ν^{2s} a²` or `‖f‖_{W^s}² = Σ |λ|^{2s} b²`. Negative orders give
/// the dual norms. The other part is ignored.
pub fn scale_norm(c: &SpectralCoefficients, scale: Scale, order: i32) -> ScaleNorm {
    let sum: f64 = match scale {
        Scale::A => c
            .a()
            .iter()
            .map(|t| (-t.eigenvalue).powi(order) * t.value * t.value)
            .sum(),
        Scale::W => c
            .b()
            .iter()
            .map(|t| t.eigenvalue.abs().powi(2 * order) * t.value * t.value)
            .sum(),
    };
    ScaleNorm {
        scale,
        order,
        value: sum.sqrt(),
    }
}

/// Solution of a diagonal power equation with the dual norm of its right side.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub u: SpectralCoefficients,
    /// `‖v‖` in the dual scale of the solved order; equals the solution's own norm there.
    pub dual_norm: ScaleNorm,
    /// `max |Lu − v|` over the coefficients after reapplying the operator.
    pub residual: f64,
}

/// Solves `𝒩_d^{2k} u = v` for potential `v`.
pub fn solve_graddiv_power(v: &SpectralCoefficients, k: u32) -> Result<Solution> {
    require_power(k)?;
    let u = apply_nd_inverse(v, 2 * k)?;
    let residual = apply_nd(&u, 2 * k)?.max_abs_diff(v)?;
    Ok(Solution {
        u,
        dual_norm: scale_norm(v, Scale::A, -2 * k as i32),
        residual,
    })
}

/// Solves `S^{2m} u = v` for vortex `v`. The solution's `W^m` norm equals the
/// `W^{−m}` norm of `v`.
pub fn solve_curl_power(v: &SpectralCoefficients, m: u32) -> Result<Solution> {
    require_power(m)?;
    let u = apply_s_inverse(v, 2 * m)?;
    let residual = apply_s(&u, 2 * m)?.max_abs_diff(v)?;
    Ok(Solution {
        u,
        dual_norm: scale_norm(v, Scale::W, -(m as i32)),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballcalc::QuadratureGrid;
    use crate::eigenbasis::{BallDomain, MultiIndex, Sign};
    use crate::spectral::{SpectralBasis, Truncation};
    use proptest::prelude::*;

    fn basis() -> SpectralBasis {
        static BASIS: std::sync::OnceLock<SpectralBasis> = std::sync::OnceLock::new();
        BASIS
            .get_or_init(|| {
                let d = BallDomain::new(1.3).unwrap();
                let grid = QuadratureGrid::with_defaults(d);
                SpectralBasis::new(d, Truncation::new(2, 2).unwrap(), &grid).unwrap()
            })
            .clone()
    }

    fn fill(b: &SpectralBasis, part: Option<Part>, vals: &[f64]) -> SpectralCoefficients {
        let mut c = b.zeros();
        let mut i = 0;
        for rec in b.records() {
            let keep = matches!(
                (part, rec.index().operator()),
                (None, _)
                    | (Some(Part::Potential), crate::eigenbasis::Operator::GradDiv)
                    | (Some(Part::Vortex), crate::eigenbasis::Operator::Curl)
            );
            if keep {
                c.set(&rec.index(), vals[i % vals.len()]).unwrap();
                i += 1;
            }
        }
        c
    }

    #[test]
    fn diagonal_action_on_units() {
        let b = basis();
        let g = MultiIndex::graddiv(1, 2, 0).unwrap();
        let rec = b.record(&g).unwrap();
        let mu = rec.eigenvalue();
        let out = apply_nd(&b.unit(&g).unwrap(), 3).unwrap();
        assert_eq!(out.get(&g), Some(mu * mu * mu));
        assert_eq!(out.norm(), (mu * mu * mu).abs());
        let s = MultiIndex::curl(2, 1, -1, Sign::Minus).unwrap();
        let lam = b.record(&s).unwrap().eigenvalue();
        assert!(lam < 0.0);
        assert_eq!(apply_s(&b.unit(&s).unwrap(), 1).unwrap().get(&s), Some(lam));
    }

    #[test]
    fn domain_errors_name_the_offender() {
        let b = basis();
        let s = MultiIndex::curl(1, 1, 0, Sign::Plus).unwrap();
        let g = MultiIndex::graddiv(0, 1, 0).unwrap();
        assert_eq!(
            apply_nd(&b.unit(&s).unwrap(), 1),
            Err(Error::Domain {
                part: Part::Vortex,
                index: s
            })
        );
        assert_eq!(
            apply_s_inverse(&b.unit(&g).unwrap(), 1),
            Err(Error::Domain {
                part: Part::Potential,
                index: g
            })
        );
        assert!(apply_nd(&b.zeros(), 0).is_err());
    }

    #[test]
    fn resolvent_collides_with_spectrum() {
        let b = basis();
        let g = MultiIndex::graddiv(1, 1, 1).unwrap();
        let nu2 = -b.record(&g).unwrap().eigenvalue();
        let v = b.unit(&g).unwrap();
        assert!(matches!(
            resolvent_nd(&v, nu2),
            Err(Error::SpectrumCollision { .. })
        ));
        // the first of the 2n+1 degenerate indices is reported
        match resolvent_nd(&v, -nu2) {
            Err(Error::SpectrumCollision { index, shift }) => {
                assert_eq!((index.n(), index.m(), shift), (1, 1, -nu2));
            }
            other => panic!("expected collision, got {other:?}"),
        }
        assert!(resolvent_nd(&v, nu2 * (1.0 + 1e-6)).is_ok());
        assert!(resolvent_nd(&v, f64::NAN).is_err());
    }

    #[test]
    fn projections_split_the_vector() {
        let b = basis();
        let c = fill(&b, None, &[0.3, -1.0, 2.0]);
        let sum = project_a(&c).add(&project_v(&c)).unwrap();
        assert_eq!(sum, c);
        assert!(project_a(&c).b().iter().all(|t| t.value == 0.0));
        const { assert!(HARMONIC_QUOTIENT_TRIVIAL) };
        assert_eq!(quotient_harmonic(&c), c);
    }

    #[test]
    fn solution_norm_equals_dual_norm() {
        let b = basis();
        let v = fill(&b, Some(Part::Potential), &[1.0, -0.5, 0.25]);
        for k in 1..=2 {
            let sol = solve_graddiv_power(&v, k).unwrap();
            let own = scale_norm(&sol.u, Scale::A, 2 * k as i32).value;
            assert!((own - sol.dual_norm.value).abs() <= 1e-12 * own);
            assert!(sol.residual <= 1e-12);
        }
        let w = fill(&b, Some(Part::Vortex), &[0.7, -2.0]);
        let sol = solve_curl_power(&w, 1).unwrap();
        let own = scale_norm(&sol.u, Scale::W, 1).value;
        assert!((own - sol.dual_norm.value).abs() <= 1e-12 * own);
    }

    #[test]
    fn inverse_bound_holds() {
        let b = basis();
        let v = fill(&b, Some(Part::Potential), &[1.0, 3.0, -2.0, 0.1]);
        let u = apply_nd_inverse(&v, 1).unwrap();
        let lhs = scale_norm(&u, Scale::A, 2).value.powi(2);
        let c2 = v
            .a()
            .iter()
            .map(|t| 1.0 + 1.0 / (-t.eigenvalue))
            .fold(0.0, f64::max);
        assert!(lhs <= c2 * v.norm().powi(2) * (1.0 + 1e-12));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(vals in prop::collection::vec(-10.0f64..10.0, 1..6), p in 1u32..4) {
            let b = basis();
            let v = fill(&b, Some(Part::Potential), &vals);
            let back = apply_nd(&apply_nd_inverse(&v, p).unwrap(), p).unwrap();
            prop_assert!(back.max_abs_diff(&v).unwrap() <= 1e-9 * (1.0 + v.norm()));
            let w = fill(&b, Some(Part::Vortex), &vals);
            let back = apply_s_inverse(&apply_s(&w, p).unwrap(), p).unwrap();
            prop_assert!(back.max_abs_diff(&w).unwrap() <= 1e-9 * (1.0 + w.norm()));
        }

        #[test]
        fn resolvent_inverts_shift(vals in prop::collection::vec(-5.0f64..5.0, 1..6), shift in -3.0f64..3.0) {
            let b = basis();
            let v = fill(&b, Some(Part::Potential), &vals);
            let back = apply_nd_shifted(&resolvent_nd(&v, shift).unwrap(), shift).unwrap();
            prop_assert!(back.max_abs_diff(&v).unwrap() <= 1e-9 * (1.0 + v.norm()));
        }

        #[test]
        fn scale_norms_nest(vals in prop::collection::vec(-5.0f64..5.0, 1..6)) {
            let b = basis();
            let v = fill(&b, Some(Part::Potential), &vals);
            // ν ≥ ν_min > 1 on this ball, so higher orders dominate lower ones.
            let n0 = scale_norm(&v, Scale::A, 0).value;
            let n1 = scale_norm(&v, Scale::A, 1).value;
            prop_assert!((n0 - v.norm()).abs() <= 1e-12 * (1.0 + n0));
            prop_assert!(n1 >= n0);
        }
    }
}
