use alloc::vec::Vec;

use super::{BallDomain, MultiIndex, Operator, Sign};
use crate::error::{Error, Result};
use crate::specfun::{ZeroKind, ZeroTable};

/// `sign · ρ_{n,m} / R`.
pub fn curl_eigenvalue(idx: &MultiIndex, domain: &BallDomain) -> Result<f64> {
    if idx.operator() != Operator::Curl {
        return Err(Error::OperatorKind {
            expected: Operator::Curl,
            found: idx.operator(),
        });
    }
    let rho = crate::specfun::bessel_zero(idx.n() as usize, idx.m() as usize)?;
    Ok(idx.sign().factor() * rho / domain.radius())
}

/// `-(α_{n,m} / R)²`.
pub fn graddiv_eigenvalue(idx: &MultiIndex, domain: &BallDomain) -> Result<f64> {
    if idx.operator() != Operator::GradDiv {
        return Err(Error::OperatorKind {
            expected: Operator::GradDiv,
            found: idx.operator(),
        });
    }
    let nu =
        crate::specfun::bessel_prime_zero(idx.n() as usize, idx.m() as usize)? / domain.radius();
    Ok(-nu * nu)
}

/// All admissible indices with `n <= n_max`, `m <= m_max`, sorted by `|eigenvalue|`
/// with ties broken by `(n, m, k, sign)`. Curl indices start at `n = 1` and come in
/// `±` pairs; each `(n, m)` contributes `2n + 1` values of `k`.
pub fn enumerate(
    operator: Operator,
    n_max: u32,
    m_max: u32,
    domain: &BallDomain,
) -> Result<Vec<MultiIndex>> {
    Ok(enumerate_with_zeros(operator, n_max, m_max, domain)?
        .into_iter()
        .map(|(idx, _)| idx)
        .collect())
}

fn enumerate_with_zeros(
    operator: Operator,
    n_max: u32,
    m_max: u32,
    domain: &BallDomain,
) -> Result<Vec<(MultiIndex, f64)>> {
    let kind = match operator {
        Operator::Curl => ZeroKind::Function,
        Operator::GradDiv => ZeroKind::Derivative,
    };
    if m_max == 0 {
        return Ok(Vec::new());
    }
    let table = ZeroTable::build(kind, n_max as usize, m_max as usize)?;
    let n_min = match operator {
        Operator::Curl => 1,
        Operator::GradDiv => 0,
    };
    let signs: &[Sign] = match operator {
        Operator::Curl => &[Sign::Plus, Sign::Minus],
        Operator::GradDiv => &[Sign::Plus],
    };
    let mut out = Vec::new();
    for n in n_min..=n_max {
        for m in 1..=m_max {
            let zero = table.get(n as usize, m as usize)?;
            let n_i = n as i32;
            for k in -n_i..=n_i {
                for &sign in signs {
                    let idx = MultiIndex::new(operator, n, m, k, sign)?;
                    out.push((idx, zero / domain.radius()));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then_with(|| tie_key(&a.0).cmp(&tie_key(&b.0)))
    });
    Ok(out)
}

fn tie_key(idx: &MultiIndex) -> (u32, u32, i32, Sign) {
    (idx.n(), idx.m(), idx.k(), idx.sign())
}

/// Curl and grad-div indices merged and sorted by wavenumber (`|λ|` or `ν`, both in
/// inverse length), then operator, then `(n, m, k, sign)`.
pub fn enumerate_mixed(n_max: u32, m_max: u32, domain: &BallDomain) -> Result<Vec<MultiIndex>> {
    let mut all = enumerate_with_zeros(Operator::Curl, n_max, m_max, domain)?;
    all.extend(enumerate_with_zeros(
        Operator::GradDiv,
        n_max,
        m_max,
        domain,
    )?);
    all.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then_with(|| a.0.operator().cmp(&b.0.operator()))
            .then_with(|| tie_key(&a.0).cmp(&tie_key(&b.0)))
    });
    Ok(all.into_iter().map(|(idx, _)| idx).collect())
}
