//! Central finite differences in Cartesian coordinates.
//!
//! Second order is the reference scheme; orders 4, 6 and 8 use the standard wider
//! central stencils and are what the residual reports run by default, since the
//! second-order truncation error `~(λh)²λ/6` exceeds `10⁻³` for the larger curl
//! eigenvalues at `h = 0.02`.

use crate::eigenbasis::BallDomain;
use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};

/// Default step, as a fraction of the radius.
pub const DEFAULT_STEP: f64 = 0.02;

/// First-derivative weights `c_j` for offsets `±j`, `j = 1..`.
fn first_weights(order: usize) -> &'static [f64] {
    match order {
        2 => &[0.5],
        4 => &[2.0 / 3.0, -1.0 / 12.0],
        6 => &[0.75, -0.15, 1.0 / 60.0],
        _ => &[0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0],
    }
}

/// Second-derivative weights: centre, then offsets `±j`.
fn second_weights(order: usize) -> (f64, &'static [f64]) {
    match order {
        2 => (-2.0, &[1.0]),
        4 => (-2.5, &[4.0 / 3.0, -1.0 / 12.0]),
        6 => (-49.0 / 18.0, &[1.5, -0.15, 1.0 / 90.0]),
        _ => (-205.0 / 72.0, &[1.6, -0.2, 8.0 / 315.0, -1.0 / 560.0]),
    }
}

type Vec3 = [f64; 3];

fn axpy(acc: &mut Vec3, a: f64, x: Vec3) {
    acc[0] += a * x[0];
    acc[1] += a * x[1];
    acc[2] += a * x[2];
}

fn shifted(x: Vec3, axis: usize, d: f64) -> Vec3 {
    let mut y = x;
    y[axis] += d;
    y
}

/// Central-difference operators of a fixed step and order. When built with a ball,
/// every call checks that the stencil stays inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Differencer {
    h: f64,
    order: usize,
    ball: Option<BallDomain>,
}

impl Differencer {
    /// `order ∈ {2, 4, 6, 8}`; stencils confined to `domain`.
    pub fn new(h: f64, order: usize, domain: BallDomain) -> Result<Self> {
        let mut d = Self::unconfined(h, order)?;
        d.ball = Some(domain);
        Ok(d)
    }

    /// Stencils may leave the ball; for fields defined beyond it.
    pub fn unconfined(h: f64, order: usize) -> Result<Self> {
        if !matches!(order, 2 | 4 | 6 | 8) {
            return Err(Error::StencilOrder(order));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidConfig(
                "finite-difference step must be positive",
            ));
        }
        Ok(Self {
            h,
            order,
            ball: None,
        })
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Farthest distance of any stencil point from the centre, mixed derivatives included.
    pub fn reach(&self) -> f64 {
        self.h * (self.order / 2) as f64 * core::f64::consts::SQRT_2
    }

    fn check(&self, x: Vec3, reach: f64) -> Result<()> {
        if let Some(ball) = self.ball {
            let far = crate::field::norm(x) + reach;
            if far > ball.radius() * (1.0 + 1e-12) {
                return Err(Error::Stencil {
                    reach: far,
                    radius: ball.radius(),
                });
            }
        }
        Ok(())
    }

    fn half_width(&self) -> f64 {
        self.h * (self.order / 2) as f64
    }

    fn partial(&self, f: &dyn Fn(Vec3) -> Vec3, x: Vec3, axis: usize) -> Vec3 {
        let mut acc = [0.0; 3];
        for (j, &c) in first_weights(self.order).iter().enumerate() {
            let d = (j + 1) as f64 * self.h;
            axpy(&mut acc, c, f(shifted(x, axis, d)));
            axpy(&mut acc, -c, f(shifted(x, axis, -d)));
        }
        crate::field::scale(acc, 1.0 / self.h)
    }

    fn second(&self, f: &dyn Fn(Vec3) -> Vec3, x: Vec3, axis: usize) -> Vec3 {
        let (c0, cs) = second_weights(self.order);
        let mut acc = crate::field::scale(f(x), c0);
        for (j, &c) in cs.iter().enumerate() {
            let d = (j + 1) as f64 * self.h;
            axpy(&mut acc, c, f(shifted(x, axis, d)));
            axpy(&mut acc, c, f(shifted(x, axis, -d)));
        }
        crate::field::scale(acc, 1.0 / (self.h * self.h))
    }

    /// `J[i][j] = ∂_j u_i`.
    pub fn jacobian<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<[Vec3; 3]> {
        self.check(x, self.half_width())?;
        let f = |y: Vec3| u.eval(y);
        let cols = [
            self.partial(&f, x, 0),
            self.partial(&f, x, 1),
            self.partial(&f, x, 2),
        ];
        let mut j = [[0.0; 3]; 3];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..3 {
                j[r][c] = col[r];
            }
        }
        Ok(j)
    }

    pub fn curl<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<Vec3> {
        let j = self.jacobian(u, x)?;
        Ok([j[2][1] - j[1][2], j[0][2] - j[2][0], j[1][0] - j[0][1]])
    }

    pub fn div<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<f64> {
        let j = self.jacobian(u, x)?;
        Ok(j[0][0] + j[1][1] + j[2][2])
    }

    pub fn grad<G: ScalarField + ?Sized>(&self, g: &G, x: Vec3) -> Result<Vec3> {
        self.check(x, self.half_width())?;
        let f = |y: Vec3| [g.eval(y), 0.0, 0.0];
        Ok([
            self.partial(&f, x, 0)[0],
            self.partial(&f, x, 1)[0],
            self.partial(&f, x, 2)[0],
        ])
    }

    /// Componentwise Laplacian.
    pub fn laplacian<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<Vec3> {
        self.check(x, self.half_width())?;
        let f = |y: Vec3| u.eval(y);
        let mut acc = [0.0; 3];
        for axis in 0..3 {
            axpy(&mut acc, 1.0, self.second(&f, x, axis));
        }
        Ok(acc)
    }

    pub fn scalar_laplacian<G: ScalarField + ?Sized>(&self, g: &G, x: Vec3) -> Result<f64> {
        let wrapped = |y: Vec3| [g.eval(y), 0.0, 0.0];
        Ok(self.laplacian(&wrapped, x)?[0])
    }

    /// `∇ div u`: pure second differences on the diagonal, nested first differences
    /// for the mixed terms.
    pub fn graddiv<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<Vec3> {
        self.check(x, self.reach())?;
        let f = |y: Vec3| u.eval(y);
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o += self.second(&f, x, i)[i];
            for j in (0..3).filter(|&j| j != i) {
                let inner = |y: Vec3| self.partial(&f, y, j);
                *o += self.partial(&inner, x, i)[j];
            }
        }
        Ok(out)
    }

    /// `rot rot u`.
    pub fn curl_curl<F: VectorField + ?Sized>(&self, u: &F, x: Vec3) -> Result<Vec3> {
        let gd = self.graddiv(u, x)?;
        let lap = self.laplacian(u, x)?;
        Ok(crate::field::sub(gd, lap))
    }
}

/// Second-order central-difference curl with the stencil confined to `domain`.
pub fn fd_curl<F: VectorField + ?Sized>(
    u: &F,
    x: Vec3,
    h: f64,
    domain: &BallDomain,
) -> Result<Vec3> {
    Differencer::new(h, 2, *domain)?.curl(u, x)
}

pub fn fd_div<F: VectorField + ?Sized>(u: &F, x: Vec3, h: f64, domain: &BallDomain) -> Result<f64> {
    Differencer::new(h, 2, *domain)?.div(u, x)
}

pub fn fd_grad<G: ScalarField + ?Sized>(
    g: &G,
    x: Vec3,
    h: f64,
    domain: &BallDomain,
) -> Result<Vec3> {
    Differencer::new(h, 2, *domain)?.grad(g, x)
}
