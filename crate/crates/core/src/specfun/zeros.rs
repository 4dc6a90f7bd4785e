//! Positive zeros of `psi_n` (`rho_{n,m}`) and of `psi_n'` (`alpha_{n,m}`).
//!
//! Zeros are bracketed by a sign scan with step `pi/8` starting just off the origin,
//! bisected down to adjacent floating-point values, then polished with one Newton step
//! that is only accepted if it stays inside the final bracket. Consecutive zeros of
//! either function are roughly `pi` apart, so a scan with that step cannot skip one.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::bessel::{sph_j, sph_j_prime, sph_j_second, MAX_ORDER};
use crate::error::{Error, Result};

/// Largest zero index `m` served.
pub const MAX_ZERO_INDEX: usize = 200;

/// Absolute accuracy bound for stored zeros and residual bound on the target function.
pub const ZERO_TOLERANCE: f64 = 1e-12;

const SCAN_STEP: f64 = PI / 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKind {
    /// Zeros `rho_{n,m}` of `psi_n`.
    Function,
    /// Zeros `alpha_{n,m}` of `psi_n'`.
    Derivative,
}

impl ZeroKind {
    fn target(self, n: usize, z: f64) -> f64 {
        match self {
            ZeroKind::Function => sph_j(n, z),
            ZeroKind::Derivative => sph_j_prime(n, z),
        }
    }

    fn slope(self, n: usize, z: f64) -> f64 {
        match self {
            ZeroKind::Function => sph_j_prime(n, z),
            ZeroKind::Derivative => sph_j_second(n, z),
        }
    }
}

fn check_capacity(n: usize, m: usize) -> Result<()> {
    if n > MAX_ORDER || m == 0 || m > MAX_ZERO_INDEX {
        return Err(Error::ZeroCapacity { n, m });
    }
    Ok(())
}

/// `m`-th positive zero of `psi_n`.
pub fn bessel_zero(n: usize, m: usize) -> Result<f64> {
    check_capacity(n, m)?;
    Ok(find_zero(ZeroKind::Function, n, m))
}

/// `m`-th strictly positive zero of `psi_n'`. The origin is never counted.
pub fn bessel_prime_zero(n: usize, m: usize) -> Result<f64> {
    check_capacity(n, m)?;
    Ok(find_zero(ZeroKind::Derivative, n, m))
}

/// First `count` positive zeros, in increasing order.
pub fn zeros(kind: ZeroKind, n: usize, count: usize) -> Result<Vec<f64>> {
    check_capacity(n, count.max(1))?;
    let mut out = Vec::with_capacity(count);
    scan(kind, n, count, |z| out.push(z));
    Ok(out)
}

fn find_zero(kind: ZeroKind, n: usize, m: usize) -> f64 {
    let mut last = f64::NAN;
    scan(kind, n, m, |z| last = z);
    last
}

fn scan(kind: ZeroKind, n: usize, count: usize, mut emit: impl FnMut(f64)) {
    let mut found = 0;
    let mut a = SCAN_STEP;
    let mut fa = kind.target(n, a);
    while found < count {
        let b = a + SCAN_STEP;
        let fb = kind.target(n, b);
        if fa == 0.0 {
            emit(a);
            found += 1;
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            emit(refine(kind, n, a, b, fa));
            found += 1;
        }
        a = b;
        fa = fb;
    }
}

fn refine(kind: ZeroKind, n: usize, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = kind.target(n, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let z = if fa.abs() <= kind.target(n, b).abs() {
        a
    } else {
        b
    };
    let slope = kind.slope(n, z);
    if slope != 0.0 {
        let polished = z - kind.target(n, z) / slope;
        if polished >= a && polished <= b {
            return polished;
        }
    }
    z
}

/// Precomputed zeros for orders `0..=n_max` and indices `1..=m_max`.
///
/// Built once, then read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    kind: ZeroKind,
    n_max: usize,
    m_max: usize,
    tolerance: f64,
    values: Vec<f64>,
}

impl ZeroTable {
    pub fn build(kind: ZeroKind, n_max: usize, m_max: usize) -> Result<Self> {
        check_capacity(n_max, m_max.max(1))?;
        let mut values = Vec::with_capacity((n_max + 1) * m_max);
        for n in 0..=n_max {
            scan(kind, n, m_max, |z| values.push(z));
        }
        Ok(Self {
            kind,
            n_max,
            m_max,
            tolerance: ZERO_TOLERANCE,
            values,
        })
    }

    pub fn kind(&self) -> ZeroKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn get(&self, n: usize, m: usize) -> Result<f64> {
        if n > self.n_max || m == 0 || m > self.m_max {
            return Err(Error::ZeroCapacity { n, m });
        }
        Ok(self.values[n * self.m_max + (m - 1)])
    }

    /// `(n, m, value)` triples in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &z)| (i / self.m_max, i % self.m_max + 1, z))
    }

    /// Residual of the target function at a stored zero.
    pub fn residual(&self, n: usize, m: usize) -> Result<f64> {
        let z = self.get(n, m)?;
        Ok(self.kind.target(n, z).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel::{psi, psi_prime};

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa0 = f(a);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if f(mid).signum() == fa0.signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Sign changes of `f` on a uniform grid of `[lo, hi]`.
    fn grid_sign_changes(
        f: impl Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        cells: usize,
    ) -> Vec<(f64, f64)> {
        let dz = (hi - lo) / cells as f64;
        let mut out = Vec::new();
        for i in 0..cells {
            let a = lo + i as f64 * dz;
            let b = a + dz;
            if f(a).signum() != f(b).signum() {
                out.push((a, b));
            }
        }
        out
    }

    #[test]
    fn first_zero_of_psi0_is_pi() {
        assert!((bessel_zero(0, 1).unwrap() - PI).abs() <= 1e-12);
        for m in 1..=10 {
            assert!((bessel_zero(0, m).unwrap() - m as f64 * PI).abs() <= 1e-12);
        }
    }

    #[test]
    fn first_zero_of_psi1() {
        let z = bessel_zero(1, 1).unwrap();
        assert!((z - 4.4934).abs() < 1e-3);
        assert!(psi(1, z).unwrap().abs() < 1e-14);
    }

    #[test]
    fn second_zero_of_psi1_against_grid_scan() {
        let f = |z: f64| psi(1, z).unwrap();
        let brackets = grid_sign_changes(f, 0.5, 12.0, 20_000);
        assert!(brackets.len() >= 3);
        let oracle = bisect(f, brackets[1].0, brackets[1].1);
        let v = bessel_zero(1, 2).unwrap();
        assert!((v - oracle).abs() < 1e-10);
        assert!(PI < bessel_zero(1, 1).unwrap() && bessel_zero(1, 1).unwrap() < v);
    }

    #[test]
    fn derivative_zero_of_psi0_equals_zero_of_psi1() {
        let a = bessel_prime_zero(0, 1).unwrap();
        let r = bessel_zero(1, 1).unwrap();
        assert!((a - r).abs() <= 1e-10);
    }

    #[test]
    fn first_derivative_zero_of_psi1() {
        let f = |z: f64| psi_prime(1, z).unwrap();
        let oracle = bisect(f, 1.0, 3.0);
        let a = bessel_prime_zero(1, 1).unwrap();
        assert!((a - oracle).abs() < 1e-10);
        assert!(a > 0.0 && a < bessel_zero(1, 1).unwrap());
        assert!(psi_prime(1, a).unwrap().abs() < 1e-10);
    }

    #[test]
    fn derivative_zeros_match_grid_scan_and_increase() {
        for n in 0..=2 {
            let f = |z: f64| psi_prime(n, z).unwrap();
            let brackets = grid_sign_changes(f, 0.05, 20.0, 40_000);
            let mut prev = 0.0;
            for m in 1..=5 {
                let a = bessel_prime_zero(n, m).unwrap();
                let oracle = bisect(f, brackets[m - 1].0, brackets[m - 1].1);
                assert!((a - oracle).abs() < 1e-10, "n={n} m={m}");
                assert!(a > prev);
                prev = a;
            }
        }
    }

    #[test]
    fn table_invariants() {
        for kind in [ZeroKind::Function, ZeroKind::Derivative] {
            let t = ZeroTable::build(kind, 12, 8).unwrap();
            for n in 0..=12 {
                for m in 1..=8 {
                    assert!(
                        t.residual(n, m).unwrap() <= t.tolerance(),
                        "{kind:?} {n} {m}"
                    );
                    if m > 1 {
                        assert!(t.get(n, m).unwrap() > t.get(n, m - 1).unwrap());
                    }
                }
            }
        }
        let t = ZeroTable::build(ZeroKind::Function, 12, 8).unwrap();
        for n in 0..12 {
            for m in 1..8 {
                let a = t.get(n, m).unwrap();
                let b = t.get(n + 1, m).unwrap();
                let c = t.get(n, m + 1).unwrap();
                assert!(a < b && b < c, "interlacing fails at n={n} m={m}");
            }
        }
    }

    #[test]
    fn bracket_straddles_zero() {
        for n in 0..6 {
            for m in 1..6 {
                let z = bessel_zero(n, m).unwrap();
                let lo = sph_j(n, z - ZERO_TOLERANCE);
                let hi = sph_j(n, z + ZERO_TOLERANCE);
                assert!(lo.signum() != hi.signum() || lo == 0.0 || hi == 0.0);
            }
        }
    }

    #[test]
    fn capacity_errors() {
        assert!(bessel_zero(0, 0).is_err());
        assert!(bessel_zero(MAX_ORDER + 1, 1).is_err());
        assert!(bessel_prime_zero(1, MAX_ZERO_INDEX + 1).is_err());
        let t = ZeroTable::build(ZeroKind::Function, 2, 2).unwrap();
        assert_eq!(t.get(3, 1), Err(Error::ZeroCapacity { n: 3, m: 1 }));
        assert_eq!(t.entries().count(), 6);
    }
}
