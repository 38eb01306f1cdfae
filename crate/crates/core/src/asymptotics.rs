//! Limit quantities for relative arc density and domination number, and
//! triangle statistics of the Poisson–Delaunay triangulation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_quadrant};

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && r >= 1.0) {
        return Err(Error::InvalidParam(format!("r must be finite and >= 1, got {r}")));
    }
    Ok(())
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParam(format!("tau must lie in [0, 1], got {tau}")));
    }
    Ok(())
}

/// Horner evaluation, coefficients from the constant term up.
fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Asymptotic arc probability of the proportional-edge PCD with M = M_C.
pub fn mu_pe(r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(mu_pe_branch(mu_pe_branch_index(r), r))
}

fn mu_pe_branch_index(r: f64) -> usize {
    if r < 1.5 {
        0
    } else if r < 2.0 {
        1
    } else {
        2
    }
}

/// Branch k of the piecewise mean, evaluated anywhere (for continuity checks).
pub fn mu_pe_branch(k: usize, r: f64) -> f64 {
    match k {
        0 => 37.0 / 216.0 * r * r,
        1 => -r * r / 8.0 + 4.0 - 8.0 / r + 4.5 / (r * r),
        _ => 1.0 - 1.5 / (r * r),
    }
}

/// Branch k of the piecewise asymptotic variance.
pub fn nu_pe_branch(k: usize, r: f64) -> f64 {
    match k {
        0 => {
            poly(
                &[3888.0, 0.0, -38880.0, 60480.0, -24246.0, 48888.0, -117953.0, 77760.0, 898.0, -13824.0, 3007.0],
                r,
            ) / (58320.0 * r.powi(4))
        }
        1 => {
            poly(
                &[15552.0, 0.0, -155520.0, 241920.0, 13608.0, -191520.0, 46588.0, 0.0, 61912.0, -37800.0, 5467.0],
                r,
            ) / (233280.0 * r.powi(4))
        }
        2 => {
            -poly(
                &[
                    8640.0, -27648.0, 103232.0, -242176.0, 273600.0, -139264.0, 13704.0, 15072.0, -5332.0, 0.0,
                    312.0, -72.0, 7.0,
                ],
                r,
            ) / (960.0 * r.powi(6))
        }
        _ => (15.0 * r.powi(4) - 11.0 * r * r - 48.0 * r + 25.0) / (15.0 * r.powi(6)),
    }
}

pub fn nu_pe(r: f64) -> Result<f64> {
    check_r(r)?;
    let k = if r < 4.0 / 3.0 {
        0
    } else if r < 1.5 {
        1
    } else if r < 2.0 {
        2
    } else {
        3
    };
    Ok(nu_pe_branch(k, r))
}

pub fn mu_cs(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(tau * tau / 6.0)
}

pub fn nu_cs(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let t = tau;
    let num = t.powi(4) * poly(&[14.0, 49.0, 1.0, -25.0, -3.0, 6.0], t);
    Ok(num / (45.0 * (t + 1.0) * (2.0 * t + 1.0) * (t + 2.0)))
}

/// Correlation-like parameter ρ = r(r − 1) of the limiting Gaussian form.
fn rho(r: f64) -> f64 {
    r * (r - 1.0)
}

/// Limit of P(γ_n = 2) for the proportional-edge PCD centered at t_i(r),
/// by 2-D quadrature after u = √a·w1, v = √a·w3 with a = 4r/(3(r − 1)),
/// which turns the integrand into 4uv·exp(−(u² + v² + 2ρuv)).
pub fn p_r(r: f64) -> Result<f64> {
    if !(1.0..1.5).contains(&r) {
        return Err(Error::InvalidParam(format!("p_r needs 1 <= r < 3/2, got {r}")));
    }
    let q = rho(r);
    let e = integrate_quadrant(|u, v| 4.0 * u * v * (-(u * u + v * v + 2.0 * q * u * v)).exp(), 1e-8);
    Ok(e.value)
}

/// Closed form of the same integral: 4∫∫uv·e^{−(u²+v²+2ρuv)} over the quadrant
/// equals [1 − ρ(π/2 − asin ρ)/√(1 − ρ²)]/(1 − ρ²).
pub fn p_r_closed_form(r: f64) -> Result<f64> {
    if !(1.0..1.5).contains(&r) {
        return Err(Error::InvalidParam(format!("p_r needs 1 <= r < 3/2, got {r}")));
    }
    let q = rho(r);
    let s = 1.0 - q * q;
    Ok((1.0 - q * (PI / 2.0 - q.asin()) / s.sqrt()) / s)
}

/// Literature value of the limit at r = 3/2 with M = M_C. It does not come
/// from the integral above and is never recomputed.
pub const P_R_THREE_HALVES_CM: f64 = 0.7413;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterCase {
    /// M is one of the corners t_i(r) of the inner triangle.
    TVertex,
    /// M is the centroid M_C.
    Centroid,
    /// M in the interior of T, not covered by another case.
    Interior,
    /// M in the inner triangle but not one of its corners.
    OtherInTr,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GammaLimitKind {
    Degenerate(u32),
    /// γ ~ 2 + Bernoulli with P(γ = 2) = p_r.
    TwoPlusBernoulli { p_r: f64, externally_computed: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaLimit {
    pub kind: GammaLimitKind,
    pub r: f64,
    pub center_case: CenterCase,
}

impl GammaLimit {
    pub fn mean(&self) -> f64 {
        match self.kind {
            GammaLimitKind::Degenerate(v) => v as f64,
            GammaLimitKind::TwoPlusBernoulli { p_r, .. } => 3.0 - p_r,
        }
    }

    pub fn variance(&self) -> f64 {
        match self.kind {
            GammaLimitKind::Degenerate(_) => 0.0,
            GammaLimitKind::TwoPlusBernoulli { p_r, .. } => p_r * (1.0 - p_r),
        }
    }

    /// Limiting probability of γ = k.
    pub fn pmf(&self, k: u32) -> f64 {
        match self.kind {
            GammaLimitKind::Degenerate(v) => f64::from(u8::from(v == k)),
            GammaLimitKind::TwoPlusBernoulli { p_r, .. } => match k {
                2 => p_r,
                3 => 1.0 - p_r,
                _ => 0.0,
            },
        }
    }
}

/// Limit law of the proportional-edge domination number.
pub fn gamma_limit(r: f64, center_case: CenterCase) -> Result<GammaLimit> {
    check_r(r)?;
    let kind = if r > 1.5 {
        GammaLimitKind::Degenerate(1)
    } else if r == 1.5 {
        match center_case {
            CenterCase::Centroid => {
                GammaLimitKind::TwoPlusBernoulli { p_r: P_R_THREE_HALVES_CM, externally_computed: true }
            }
            _ => return Err(Error::InvalidParam("r = 3/2 is only covered for M = M_C".into())),
        }
    } else {
        match center_case {
            CenterCase::TVertex => GammaLimitKind::TwoPlusBernoulli { p_r: p_r(r)?, externally_computed: false },
            // M_C lies in the inner triangle for r < 3/2 without being a corner.
            CenterCase::OtherInTr | CenterCase::Centroid => GammaLimitKind::Degenerate(3),
            CenterCase::Interior => {
                return Err(Error::InvalidParam(format!("no limit stated for r = {r} and this center")))
            }
        }
    };
    Ok(GammaLimit { kind, r, center_case })
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::OutOfSupport(format!("argument {x} is not finite")))
    }
}

/// Density of one inner angle of the typical triangle.
pub fn pd_angle_pdf(x: f64) -> Result<f64> {
    let x = finite(x)?;
    if !(x > 0.0 && x < PI) {
        return Ok(0.0);
    }
    Ok(4.0 / (3.0 * PI) * ((PI - x) * x.cos() + x.sin()) * x.sin())
}

/// Joint density of two inner angles.
pub fn pd_joint_angle_pdf(x: f64, y: f64) -> Result<f64> {
    let (x, y) = (finite(x)?, finite(y)?);
    if !(x > 0.0 && y > 0.0 && x + y < PI) {
        return Ok(0.0);
    }
    Ok(8.0 / (3.0 * PI) * x.sin() * y.sin() * (x + y).sin())
}

/// Density of the smallest angle.
pub fn pd_min_angle_pdf(x: f64) -> Result<f64> {
    let x = finite(x)?;
    if !(x > 0.0 && x < PI / 3.0) {
        return Ok(0.0);
    }
    Ok(2.0 / PI * ((PI - 3.0 * x) * (2.0 * x).sin() + (2.0 * x).cos() - (4.0 * x).cos()))
}

/// Density of the largest angle.
pub fn pd_max_angle_pdf(x: f64) -> Result<f64> {
    let x = finite(x)?;
    let (s, c) = x.sin_cos();
    Ok(if x > PI / 3.0 && x < PI / 2.0 {
        2.0 / PI * (3.0 * x * (2.0 * x).sin() - (2.0 * x).cos() + (4.0 * x).cos() - PI * (2.0 * x).sin())
    } else if x >= PI / 2.0 && x < PI {
        (4.0 * PI * c * s + 3.0 * s * s - c * c - 4.0 * x * c * s + 1.0) / PI
    } else {
        0.0
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::OutOfSupport(format!("intensity must be positive, got {lambda}")));
    }
    Ok(())
}

/// Density of the length of an edge of the typical triangle at intensity λ.
pub fn pd_edge_length_pdf(x: f64, lambda: f64) -> Result<f64> {
    let x = finite(x)?;
    check_lambda(lambda)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let a = PI * lambda * x / 3.0;
    Ok(a * (lambda.sqrt() * x * (-PI * lambda * x * x / 4.0).exp() + erfc((PI * lambda).sqrt() * x / 2.0)))
}

/// E[V^k] for the area V of the typical triangle at intensity λ.
pub fn pd_area_moment(k: u32, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if k == 0 {
        return Err(Error::OutOfSupport("moment order must be >= 1".into()));
    }
    let k = f64::from(k);
    let ln = ln_gamma((3.0 * k + 5.0) / 2.0) + ln_gamma(k / 2.0 + 1.0)
        - 2.0 * ln_gamma((k + 3.0) / 2.0)
        - k * 2f64.ln()
        - (k - 0.5) * PI.ln()
        - k * lambda.ln();
    Ok(ln.exp() / 3.0)
}

/// P(largest angle > π/2), integrating the largest-angle density.
pub fn pd_obtuse_probability() -> f64 {
    integrate(|x| pd_max_angle_pdf(x).unwrap(), PI / 2.0, PI, 1e-10).value
}
