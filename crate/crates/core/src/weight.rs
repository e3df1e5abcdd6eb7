//! Positive weights `w` of self-adjoint model problems `(w φ')' = −λ w φ`.
//!
//! The drift form `φ'' − τ φ' = −λ φ` corresponds to `w'/w = −τ`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coefficients::{big_c, big_c_prime, first_zero, CurvatureParams};

/// A weight function on an interval starting at `t = 0`.
pub trait Weight: Send + Sync {
    fn value(&self, t: f64) -> f64;

    /// `w'(t) / w(t)`.
    fn log_derivative(&self, t: f64) -> f64;

    /// Drift `τ = −w'/w` of the equivalent non-self-adjoint operator.
    fn drift(&self, t: f64) -> f64 {
        -self.log_derivative(t)
    }

    /// Smallest `t > 0` at which the weight stops being positive.
    fn positivity_radius(&self) -> f64 {
        f64::INFINITY
    }

    /// Whether `w(−t) = w(t)`; required for the full-interval Neumann problem.
    fn is_even(&self) -> bool {
        false
    }
}

/// One factor `C_{κ,Λ}(t)^{exponent}` of a [`ModelWeight`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightFactor {
    pub kappa: f64,
    pub lambda: f64,
    pub exponent: u32,
}

/// Product of powers of `C_{κ,Λ}`; covers every weight of the comparison
/// theorems (`c_κ = C_{κ,0}`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelWeight {
    pub factors: Vec<WeightFactor>,
}

impl ModelWeight {
    pub fn new(factors: impl IntoIterator<Item = WeightFactor>) -> Self {
        Self {
            factors: factors.into_iter().filter(|f| f.exponent > 0).collect(),
        }
    }

    /// The constant weight `w ≡ 1`.
    pub fn flat() -> Self {
        Self { factors: Vec::new() }
    }

    /// `c_{κ₂}^{2m−2} c_{4κ₁}`.
    pub fn kahler(params: &CurvatureParams) -> Self {
        Self::kahler_dirichlet(params, 0.0)
    }

    /// `C_{κ₂,Λ}^{2m−2} C_{4κ₁,Λ}`.
    pub fn kahler_dirichlet(params: &CurvatureParams, lambda: f64) -> Self {
        Self::new([
            WeightFactor {
                kappa: params.kappa2,
                lambda,
                exponent: params.orthogonal_exponent(),
            },
            WeightFactor {
                kappa: 4.0 * params.kappa1,
                lambda,
                exponent: 1,
            },
        ])
    }

    /// `c_κ^{n−1}`.
    pub fn riemannian(n: u32, kappa: f64) -> Self {
        Self::riemannian_dirichlet(n, kappa, 0.0)
    }

    /// `C_{κ,Λ}^{n−1}`.
    pub fn riemannian_dirichlet(n: u32, kappa: f64, lambda: f64) -> Self {
        Self::new([WeightFactor {
            kappa,
            lambda,
            exponent: n.saturating_sub(1),
        }])
    }

    /// Radius of each factor, paired with a readable name for error messages.
    pub fn factor_radii(&self) -> Vec<(String, f64)> {
        self.factors
            .iter()
            .map(|f| {
                (
                    format!("C_(kappa={},Lambda={})", f.kappa, f.lambda),
                    first_zero(f.kappa, f.lambda),
                )
            })
            .collect()
    }
}

impl Weight for ModelWeight {
    fn value(&self, t: f64) -> f64 {
        self.factors
            .iter()
            .map(|f| big_c(f.kappa, f.lambda, t).powi(f.exponent as i32))
            .product()
    }

    fn log_derivative(&self, t: f64) -> f64 {
        self.factors
            .iter()
            .map(|f| {
                f64::from(f.exponent) * big_c_prime(f.kappa, f.lambda, t)
                    / big_c(f.kappa, f.lambda, t)
            })
            .sum()
    }

    fn positivity_radius(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| first_zero(f.kappa, f.lambda))
            .fold(f64::INFINITY, f64::min)
    }

    fn is_even(&self) -> bool {
        self.factors.iter().all(|f| f.lambda == 0.0)
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied weight given by closures for `w` and `w'`.
#[derive(Clone)]
pub struct FnWeight {
    value: ScalarFn,
    derivative: ScalarFn,
    radius: f64,
    even: bool,
}

impl FnWeight {
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            radius: f64::INFINITY,
            even: false,
        }
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn even(mut self) -> Self {
        self.even = true;
        self
    }
}

impl fmt::Debug for FnWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnWeight")
            .field("radius", &self.radius)
            .field("even", &self.even)
            .finish_non_exhaustive()
    }
}

impl Weight for FnWeight {
    fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn log_derivative(&self, t: f64) -> f64 {
        (self.derivative)(t) / (self.value)(t)
    }

    fn positivity_radius(&self) -> f64 {
        self.radius
    }

    fn is_even(&self) -> bool {
        self.even
    }
}

impl<W: Weight + ?Sized> Weight for &W {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn log_derivative(&self, t: f64) -> f64 {
        (**self).log_derivative(t)
    }
    fn positivity_radius(&self) -> f64 {
        (**self).positivity_radius()
    }
    fn is_even(&self) -> bool {
        (**self).is_even()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{drift_kahler, weight_dirichlet, weight_kahler};

    #[test]
    fn model_weight_matches_coefficient_functions() {
        let p = CurvatureParams::new(3, 0.3, -0.5).unwrap();
        let w = ModelWeight::kahler(&p);
        for &t in &[0.0, 0.3, 0.8, 1.3] {
            assert!((w.value(t) - weight_kahler(&p, t).unwrap()).abs() < 1e-14);
            assert!((w.drift(t) - drift_kahler(&p, t).unwrap()).abs() < 1e-13);
        }
        let wd = ModelWeight::kahler_dirichlet(&p, 0.4);
        for &t in &[0.0, 0.3, 0.6] {
            assert!((wd.value(t) - weight_dirichlet(&p, 0.4, t).unwrap()).abs() < 1e-14);
        }
        assert!((w.positivity_radius() - std::f64::consts::PI / (2.0 * 1.2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn m_equal_one_drops_orthogonal_factor() {
        let p = CurvatureParams::new(1, 0.25, 9.0).unwrap();
        let w = ModelWeight::kahler(&p);
        assert_eq!(w.factors.len(), 1);
        assert!((w.positivity_radius() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn fn_weight_drift() {
        let w = FnWeight::new(|t| 1.0 + t, |_| 1.0);
        assert!((w.drift(1.0) + 0.5).abs() < 1e-15);
    }
}
