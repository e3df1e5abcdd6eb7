//! Model coefficient functions of the comparison problems.
//!
//! Every function here is a closed-form expression in the curvature scalar
//! `kappa` (units 1/length²), the boundary curvature `lambda` (units
//! 1/length) and the arclength parameter `t`. The three sign branches of
//! `kappa` are glued together by a truncated power series in `kappa * t²`
//! so that all functions are continuous (and accurate) as `kappa -> 0`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `|kappa| t²` the branch formulas are replaced by
/// their Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// Curvature data of a Kähler comparison problem.
///
/// `kappa1` bounds the holomorphic sectional curvature (`H >= 4 kappa1`),
/// `kappa2` bounds the orthogonal Ricci curvature (`Ric⊥ >= 2(m-1) kappa2`).
/// For `m = 1` the coefficient `2(m-1)` vanishes and `kappa2` is inert.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureParams {
    pub m: u32,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl CurvatureParams {
    pub fn new(m: u32, kappa1: f64, kappa2: f64) -> Result<Self> {
        let params = Self { m, kappa1, kappa2 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidDimension(format!(
                "complex dimension m must be at least 1, got {}",
                self.m
            )));
        }
        if !self.kappa1.is_finite() || !self.kappa2.is_finite() {
            return Err(Error::InvalidInput(
                "curvature bounds must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Exponent `2m - 2` carried by the `kappa2` factor of the weight.
    pub fn orthogonal_exponent(&self) -> u32 {
        2 * self.m - 2
    }
}

/// `s_kappa(t)`: the solution of `s'' + kappa s = 0`, `s(0) = 0`, `s'(0) = 1`.
pub fn s_kappa(kappa: f64, t: f64) -> f64 {
    let x = kappa * t * t;
    if x.abs() < SERIES_THRESHOLD {
        // t (1 - x/6 + x²/120 - x³/5040)
        t * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0)))
    } else if kappa > 0.0 {
        let r = kappa.sqrt();
        (r * t).sin() / r
    } else {
        let r = (-kappa).sqrt();
        (r * t).sinh() / r
    }
}

/// `c_kappa(t)`: `cos(√κ t)`, `1`, or `cosh(√(−κ) t)` by the sign of `kappa`.
pub fn c_kappa(kappa: f64, t: f64) -> f64 {
    let x = kappa * t * t;
    if x.abs() < SERIES_THRESHOLD {
        // 1 - x/2 + x²/24 - x³/720
        1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0))
    } else if kappa > 0.0 {
        (kappa.sqrt() * t).cos()
    } else {
        ((-kappa).sqrt() * t).cosh()
    }
}

/// Derivative of [`c_kappa`] in `t`.
pub fn c_kappa_prime(kappa: f64, t: f64) -> f64 {
    -kappa * s_kappa(kappa, t)
}

/// `T_kappa(t) = -c_kappa'(t) / c_kappa(t)`.
///
/// For `kappa > 0` this is `√κ tan(√κ t)` and requires `|t| < π/(2√κ)`.
pub fn t_kappa(kappa: f64, t: f64) -> Result<f64> {
    if kappa > 0.0 && kappa.sqrt() * t.abs() >= FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "T_kappa({kappa}, {t}) is undefined: |t| must be below pi/(2 sqrt(kappa)) = {}",
            FRAC_PI_2 / kappa.sqrt()
        )));
    }
    Ok(t_kappa_unchecked(kappa, t))
}

pub(crate) fn t_kappa_unchecked(kappa: f64, t: f64) -> f64 {
    let x = kappa * t * t;
    if x.abs() < SERIES_THRESHOLD {
        // κt (1 + x/3 + 2x²/15 + 17x³/315)
        kappa * t * (1.0 + x * (1.0 / 3.0 + x * (2.0 / 15.0 + x * 17.0 / 315.0)))
    } else if kappa > 0.0 {
        let r = kappa.sqrt();
        r * (r * t).tan()
    } else {
        let r = (-kappa).sqrt();
        -r * (r * t).tanh()
    }
}

/// `C_{kappa,Lambda}(t)`: the solution of `φ'' + κφ = 0`, `φ(0) = 1`,
/// `φ'(0) = −Λ`, i.e. `c_kappa(t) − Λ s_kappa(t)`.
pub fn big_c(kappa: f64, lambda: f64, t: f64) -> f64 {
    c_kappa(kappa, t) - lambda * s_kappa(kappa, t)
}

/// Exact derivative of [`big_c`] in `t`.
pub fn big_c_prime(kappa: f64, lambda: f64, t: f64) -> f64 {
    -kappa * s_kappa(kappa, t) - lambda * c_kappa(kappa, t)
}

/// Exact second derivative of [`big_c`] in `t` (equal to `−κ C`).
pub fn big_c_second(kappa: f64, lambda: f64, t: f64) -> f64 {
    -kappa * big_c(kappa, lambda, t)
}

/// Smallest `t > 0` with `C_{kappa,Lambda}(t) = 0`, or `+∞`.
pub fn first_zero(kappa: f64, lambda: f64) -> f64 {
    if kappa > 0.0 {
        let r = kappa.sqrt();
        // C = cos(rt) − Λ sin(rt)/r vanishes where tan(rt) = r/Λ.
        if lambda > 0.0 {
            (r / lambda).atan() / r
        } else if lambda == 0.0 {
            FRAC_PI_2 / r
        } else {
            (std::f64::consts::PI - (r / -lambda).atan()) / r
        }
    } else if kappa == 0.0 {
        if lambda > 0.0 {
            1.0 / lambda
        } else {
            f64::INFINITY
        }
    } else {
        let r = (-kappa).sqrt();
        // C = cosh(rt) − Λ sinh(rt)/r vanishes where tanh(rt) = r/Λ < 1.
        if lambda > r {
            (r / lambda).atanh() / r
        } else {
            f64::INFINITY
        }
    }
}

/// `T_{kappa,Lambda}(t) = −C'(t)/C(t)` for `0 <= t < first_zero(kappa, lambda)`.
pub fn t_kappa_lambda(kappa: f64, lambda: f64, t: f64) -> Result<f64> {
    if lambda == 0.0 {
        if t < 0.0 {
            return Err(Error::Domain(format!(
                "T_(kappa,Lambda) is evaluated for t >= 0 only, got t = {t}"
            )));
        }
        return t_kappa(kappa, t);
    }
    let zero = first_zero(kappa, lambda);
    if !(0.0..zero).contains(&t) {
        return Err(Error::Domain(format!(
            "T_(kappa,Lambda)({kappa}, {lambda}, {t}) is undefined outside [0, {zero})"
        )));
    }
    Ok(-big_c_prime(kappa, lambda, t) / big_c(kappa, lambda, t))
}

/// Drift of the Kähler model operator: `2(m−1) T_{κ₂}(t) + T_{4κ₁}(t)`.
pub fn drift_kahler(params: &CurvatureParams, t: f64) -> Result<f64> {
    params.validate()?;
    let holomorphic = t_kappa(4.0 * params.kappa1, t)?;
    if params.m == 1 {
        return Ok(holomorphic);
    }
    let orthogonal = t_kappa(params.kappa2, t)?;
    Ok(f64::from(params.orthogonal_exponent()) * orthogonal + holomorphic)
}

/// Weight of the self-adjoint Kähler model problem:
/// `c_{κ₂}(t)^{2m−2} c_{4κ₁}(t)`.
pub fn weight_kahler(params: &CurvatureParams, t: f64) -> Result<f64> {
    params.validate()?;
    let holomorphic = c_kappa(4.0 * params.kappa1, t);
    let orthogonal = if params.m > 1 { c_kappa(params.kappa2, t) } else { 1.0 };
    let radius = if params.m > 1 {
        first_zero(4.0 * params.kappa1, 0.0).min(first_zero(params.kappa2, 0.0))
    } else {
        first_zero(4.0 * params.kappa1, 0.0)
    };
    if holomorphic <= 0.0 || orthogonal <= 0.0 || t.abs() >= radius {
        return Err(Error::Domain(format!(
            "Kähler weight is not positive at t = {t} for {params:?}"
        )));
    }
    Ok(orthogonal.powi(params.orthogonal_exponent() as i32) * holomorphic)
}

/// Closed-form `t`-derivative of [`weight_kahler`] (product rule).
pub fn weight_kahler_derivative(params: &CurvatureParams, t: f64) -> Result<f64> {
    weight_kahler(params, t)?;
    let k4 = 4.0 * params.kappa1;
    let holomorphic = c_kappa(k4, t);
    let d_holomorphic = c_kappa_prime(k4, t);
    if params.m == 1 {
        return Ok(d_holomorphic);
    }
    let e = params.orthogonal_exponent() as i32;
    let orthogonal = c_kappa(params.kappa2, t);
    let d_orthogonal = c_kappa_prime(params.kappa2, t);
    Ok(f64::from(e) * orthogonal.powi(e - 1) * d_orthogonal * holomorphic
        + orthogonal.powi(e) * d_holomorphic)
}

/// Weight of the Kähler Dirichlet model problem:
/// `C_{κ₂,Λ}(t)^{2m−2} C_{4κ₁,Λ}(t)` on `0 <= t < min` of the first zeros.
pub fn weight_dirichlet(params: &CurvatureParams, lambda: f64, t: f64) -> Result<f64> {
    params.validate()?;
    let mut radius = first_zero(4.0 * params.kappa1, lambda);
    if params.m > 1 {
        radius = radius.min(first_zero(params.kappa2, lambda));
    }
    if !(0.0..radius).contains(&t) {
        return Err(Error::Domain(format!(
            "Dirichlet weight is undefined at t = {t}: valid range is [0, {radius})"
        )));
    }
    let holomorphic = big_c(4.0 * params.kappa1, lambda, t);
    if params.m == 1 {
        return Ok(holomorphic);
    }
    let orthogonal = big_c(params.kappa2, lambda, t);
    Ok(orthogonal.powi(params.orthogonal_exponent() as i32) * holomorphic)
}
