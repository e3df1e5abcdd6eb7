//! Modulus-of-continuity envelopes `|u(y,t) − u(x,t)| ≤ 2φ(|y − x|/2, t)`.

use serde::Serialize;

use crate::error::Result;
use crate::sturm_liouville::{eigenfunction_samples, SlProblem};
use crate::verification::heatflow::{FlowProfile, Trajectory};
use crate::weight::Weight;

/// Separable envelope `φ(s, t) = C e^{−μ t} ψ(s)` sampled at the pair
/// half-distances `s_k = k h / 2` of a uniform grid.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub amplitude: f64,
    pub rate: f64,
    /// `s_k` for `k = 0..n`.
    pub s: Vec<f64>,
    /// `ψ(s_k)` with `ψ(0) = 0`, `ψ'(0) = 1`.
    pub psi: Vec<f64>,
    /// `ψ'(s_k)`.
    pub dpsi: Vec<f64>,
}

impl Envelope {
    pub fn value(&self, k: usize, t: f64) -> f64 {
        self.amplitude * (-self.rate * t).exp() * self.psi[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeCheck {
    pub holds: bool,
    pub max_violation: f64,
    pub tolerance: f64,
}

/// Numerical check of the envelope hypotheses: `ψ' ≥ 0`, `φ_t ≥ Lφ` and
/// initial domination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeHypotheses {
    pub nondecreasing: bool,
    /// `min (φ_t − Lφ)` over interior samples at `t = 0`, relative to `C μ max ψ`.
    pub supersolution_defect: f64,
    pub initially_dominates: bool,
}

impl EnvelopeHypotheses {
    pub fn hold(&self, tol: f64) -> bool {
        self.nondecreasing && self.supersolution_defect >= -tol && self.initially_dominates
    }
}

/// `ω(s_k) = max_{j − i = k} |u_j − u_i| / 2` on a uniform grid, `k = 0..n`.
pub fn modulus_of_continuity(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    (0..n)
        .map(|k| {
            (0..n - k)
                .map(|i| (u[i + k] - u[i]).abs())
                .fold(0.0, f64::max)
                / 2.0
        })
        .collect()
}

/// Builds the separable envelope from the mixed eigenpair `(rate, ψ)` of
/// `weight` on `[0, ℓ]`, with the amplitude fitted to dominate `u0`.
pub fn envelope_from_eigenfunction<W: Weight>(
    weight: &W,
    half_length: f64,
    rate: f64,
    spacing: f64,
    n: usize,
    u0: &[f64],
) -> Result<Envelope> {
    let s: Vec<f64> = (0..n).map(|k| k as f64 * spacing / 2.0).collect();
    let problem = SlProblem::mixed(weight, half_length);
    let psi = eigenfunction_samples(&problem, rate, &s)?;
    let dpsi = derivative_samples(weight, &problem, rate, &s)?;
    let omega = modulus_of_continuity(u0);
    let amplitude = (1..n)
        .filter(|&k| psi[k] > 0.0)
        .map(|k| omega[k] / psi[k])
        .fold(0.0, f64::max);
    Ok(Envelope {
        amplitude,
        rate,
        s,
        psi,
        dpsi,
    })
}

fn derivative_samples<W: Weight>(
    weight: &W,
    problem: &SlProblem<&W>,
    rate: f64,
    s: &[f64],
) -> Result<Vec<f64>> {
    use crate::ode::{integrate_sampled, Tolerance};
    let mut rhs = |t: f64, y: &[f64; 2]| {
        let wt = problem.weight.value(t);
        [y[1] / wt, -rate * wt * y[0]]
    };
    let states = integrate_sampled(
        &mut rhs,
        0.0,
        [0.0, weight.value(0.0)],
        s,
        Tolerance::new(1e-12, 1e-15),
    )?;
    Ok(states
        .iter()
        .zip(s)
        .map(|(y, &t)| y[1] / weight.value(t))
        .collect())
}

/// Compares the brute-force modulus of continuity of every recorded
/// snapshot with the envelope. Violations are reported, never raised.
pub fn modulus_envelope_check(trajectory: &Trajectory, envelope: &Envelope, tol: f64) -> EnvelopeCheck {
    let mut worst = 0.0_f64;
    for (u, &t) in trajectory.u.iter().zip(&trajectory.times) {
        let omega = modulus_of_continuity(u);
        for (k, w) in omega.iter().enumerate().take(envelope.psi.len()) {
            worst = worst.max(w - envelope.value(k, t));
        }
    }
    EnvelopeCheck {
        holds: worst <= tol,
        max_violation: worst,
        tolerance: tol,
    }
}

/// Checks the envelope hypotheses at `t = 0` for a flow with drift
/// `−w'/w`: `ψ' ≥ 0`, `φ_t ≥ α(φ')φ'' − τβ(φ')φ'`, and `ω(·,0) ≤ φ(·,0)`.
pub fn envelope_hypotheses<W: Weight>(
    weight: &W,
    profile: &FlowProfile,
    envelope: &Envelope,
    u0: &[f64],
) -> EnvelopeHypotheses {
    let n = envelope.s.len();
    let c = envelope.amplitude;
    let nondecreasing = envelope.dpsi.iter().all(|d| *d >= -1e-12);
    let scale = c * envelope.rate * envelope.psi.iter().fold(0.0_f64, |a, v| a.max(*v));
    let mut defect = f64::INFINITY;
    for k in 1..n - 1 {
        let h = envelope.s[k + 1] - envelope.s[k];
        let d1 = c * envelope.dpsi[k];
        let d2 = c * (envelope.dpsi[k + 1] - envelope.dpsi[k - 1]) / (2.0 * h);
        let phi = c * envelope.psi[k];
        let l_phi = profile.alpha(d1) * d2 - weight.drift(envelope.s[k]) * profile.beta(d1) * d1;
        let phi_t = -envelope.rate * phi;
        defect = defect.min((phi_t - l_phi) / scale.max(1e-300));
    }
    let omega = modulus_of_continuity(u0);
    let initially_dominates = omega
        .iter()
        .enumerate()
        .all(|(k, w)| *w <= envelope.value(k, 0.0) * (1.0 + 1e-12) + 1e-15);
    EnvelopeHypotheses {
        nondecreasing,
        supersolution_defect: defect,
        initially_dominates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::heatflow::{heatflow_1d, HeatFlowConfig};
    use crate::weight::ModelWeight;
    use std::f64::consts::PI;

    #[test]
    fn modulus_of_linear_data() {
        let u: Vec<f64> = (0..11).map(|i| i as f64).collect();
        let w = modulus_of_continuity(&u);
        for (k, v) in w.iter().enumerate() {
            assert_eq!(*v, k as f64 / 2.0);
        }
    }

    #[test]
    fn constant_data_has_zero_modulus() {
        assert!(modulus_of_continuity(&[3.0; 20]).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn separable_solution_saturates_envelope() {
        let n = 1000;
        let cfg = HeatFlowConfig::new(n, 0.3);
        let u0 = |x: f64| (PI * x).sin();
        let r = heatflow_1d(&ModelWeight::flat(), &FlowProfile::linear(), 0.5, &u0, &cfg, None).unwrap();
        let h = r.trajectory.spacing();
        let x0: Vec<f64> = r.trajectory.u[0].clone();
        let env = envelope_from_eigenfunction(&ModelWeight::flat(), 0.5, PI * PI, h, n, &x0).unwrap();
        let check = modulus_envelope_check(&r.trajectory, &env, 1e-6);
        assert!(check.holds, "{check:?}");
        let hyp = envelope_hypotheses(&ModelWeight::flat(), &FlowProfile::linear(), &env, &x0);
        assert!(hyp.hold(1e-4), "{hyp:?}");
    }
}
