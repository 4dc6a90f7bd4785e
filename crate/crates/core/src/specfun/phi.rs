//! The line integral `Φ_n(λr) = ∫_0^r e^{iλ(r-t)} ψ_n(λt) t^{-1} dt`.
//!
//! [`phi_integral`] evaluates the integral itself: a double power series on
//! `[0, min(r, 1/|λ|)]` and adaptive Gauss–Kronrod (7/15) on the remainder.
//! [`phi_closed`] is the closed form
//! `Φ_n(z) = (ψ_n(z) + z ψ_n'(z) + i z ψ_n(z)) / (n(n+1))`, obtained by noting that
//! both sides solve `(d/dr - iλ) F = ψ_n(λr)/r` with `F(0) = 0`. The eigenfield
//! evaluators use the closed form; the quadrature route is kept as its check.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::bessel::{double_factorial_odd, sph_j, sph_j_prime, MAX_ORDER};
use crate::error::{Error, Result};

const ABS_TOL: f64 = 1e-13;

fn check(n: usize, lambda: f64, r: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::UnsupportedOrder { n });
    }
    if n > MAX_ORDER {
        return Err(Error::OrderRange { n, max: MAX_ORDER });
    }
    if !lambda.is_finite() || !r.is_finite() || lambda == 0.0 || r < 0.0 {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `Φ_n(λr)` by quadrature.
pub fn phi_integral(n: usize, lambda: f64, r: f64) -> Result<Complex64> {
    check(n, lambda, r)?;
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let split = r.min(1.0 / lambda.abs());
    let head = series_head(n, lambda * split) * Complex64::from_polar(1.0, lambda * r);
    if split >= r {
        return Ok(head);
    }
    let integrand = |t: f64| Complex64::from_polar(sph_j(n, lambda * t) / t, lambda * (r - t));
    Ok(head + adaptive_gk(&integrand, split, r, ABS_TOL))
}

/// `Φ_n(z)` in closed form, `n >= 1`.
pub fn phi_closed(n: usize, z: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::UnsupportedOrder { n });
    }
    if n > MAX_ORDER {
        return Err(Error::OrderRange { n, max: MAX_ORDER });
    }
    if !z.is_finite() {
        return Err(Error::NonFinite);
    }
    let psi = sph_j(n, z);
    let nn = (n * (n + 1)) as f64;
    Ok(Complex64::new(psi + z * sph_j_prime(n, z), z * psi) / nn)
}

/// `∫_0^{x/λ} e^{-iλt} ψ_n(λt) t^{-1} dt` for `|x| <= 1`, term by term:
/// `Σ_j Σ_l s_j (-i)^l / l! · x^{n+2j+l} / (n+2j+l)`.
fn series_head(n: usize, x: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut s_j = 1.0 / double_factorial_odd(n);
    let mut j = 0usize;
    loop {
        let mut inner = Complex64::new(0.0, 0.0);
        // (-i)^l x^l / l!
        let mut c = Complex64::new(1.0, 0.0);
        let mut l = 0usize;
        loop {
            let term = c / (n + 2 * j + l) as f64;
            inner += term;
            l += 1;
            c *= Complex64::new(0.0, -x) / l as f64;
            if c.norm() < 1e-18 {
                break;
            }
        }
        let contrib = inner * s_j * x.powi((n + 2 * j) as i32);
        total += contrib;
        j += 1;
        s_j *= -0.5 / (j as f64 * (2 * n + 2 * j + 1) as f64);
        if (s_j * x.powi((n + 2 * j) as i32)).abs() < 1e-18 * total.norm().max(1e-300) || j > 40 {
            break;
        }
    }
    total
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

fn adaptive_gk(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let mut stack: Vec<(f64, f64, f64)> = Vec::new();
    stack.push((a, b, tol));
    let mut total = Complex64::new(0.0, 0.0);
    while let Some((lo, hi, tol)) = stack.pop() {
        let (value, err) = gk15(f, lo, hi);
        if err <= tol || hi - lo < 1e-12 * (b - a) {
            total += value;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, 0.5 * tol));
            stack.push((lo, mid, 0.5 * tol));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeros::bessel_zero;

    #[test]
    fn imaginary_part_vanishes_at_zeros() {
        for &(n, m) in &[(1, 1), (1, 2), (2, 1), (2, 2)] {
            let rho = bessel_zero(n, m).unwrap();
            for radius in [1.0, 2.5] {
                let v = phi_integral(n, rho / radius, radius).unwrap();
                assert!(v.im.abs() <= 1e-8, "({n},{m}) R={radius}: {}", v.im);
            }
        }
    }

    #[test]
    fn leading_order_near_origin() {
        let v = phi_integral(1, 1.0, 1e-3).unwrap();
        assert!((v.re - 1e-3 / 3.0).abs() / (1e-3 / 3.0) < 1e-4);
    }

    #[test]
    fn sign_reversal_conjugates_up_to_parity() {
        for n in 1..5 {
            for &(l, r) in &[(4.5, 0.8), (2.0, 3.0), (9.0, 1.0)] {
                let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
                let a = phi_integral(n, -l, r).unwrap();
                let b = phi_integral(n, l, r).unwrap().conj() * parity;
                assert!((a - b).norm() < 1e-11, "n={n}");
            }
        }
    }

    #[test]
    fn quadrature_agrees_with_closed_form() {
        for n in 1..=6 {
            for &(l, r) in &[
                (0.3, 1.0),
                (4.49, 1.0),
                (-7.7, 0.6),
                (15.0, 1.0),
                (2.0, 0.2),
            ] {
                let q = phi_integral(n, l, r).unwrap();
                let c = phi_closed(n, l * r).unwrap();
                assert!(
                    (q - c).norm() <= 1e-10,
                    "n={n} l={l} r={r}: {}",
                    (q - c).norm()
                );
            }
        }
    }

    #[test]
    fn order_zero_rejected() {
        assert_eq!(
            phi_integral(0, 1.0, 1.0),
            Err(Error::UnsupportedOrder { n: 0 })
        );
    }
}
