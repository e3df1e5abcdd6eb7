//! Quasilinear heat flows `u_t = α(u') u'' − τ(x) β(u') u'` on `[−ℓ, ℓ]`
//! with zero-flux ends, and fitting of the oscillation decay rate.
//!
//! Space is discretized by cell-centred finite volumes, so end faces carry
//! no flux and weights that vanish at `±ℓ` need no special care. The
//! linear profile is advanced exactly through the eigendecomposition of
//! the discrete operator ([`LinearFlow`]); nonlinear profiles use linearly
//! implicit Euler steps whose matrix is an M-matrix, so the discrete
//! maximum principle holds and the oscillation cannot grow.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sturm_liouville::{solve_shooting, SlProblem};
use crate::tridiag::solve_tridiagonal;
use crate::weight::Weight;

/// Largest accepted RMS residual of the log-oscillation fit.
pub const FIT_RESIDUAL_MAX: f64 = 1e-3;

type GradientFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Gradient-dependent coefficients `α(s)`, `β(s)` of a quasilinear flow.
#[derive(Clone)]
pub struct FlowProfile {
    pub name: String,
    alpha: GradientFn,
    beta: GradientFn,
    linear: bool,
}

impl std::fmt::Debug for FlowProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlowProfile")
            .field("name", &self.name)
            .field("linear", &self.linear)
            .finish_non_exhaustive()
    }
}

impl FlowProfile {
    /// `α = β = 1`, the drift-Laplacian heat equation.
    pub fn linear() -> Self {
        Self {
            name: "linear".into(),
            alpha: Arc::new(|_| 1.0),
            beta: Arc::new(|_| 1.0),
            linear: true,
        }
    }

    /// Graphical mean curvature flow: `α = 1/(1 + s²)`, `β = 1`.
    pub fn graphical_mcf() -> Self {
        Self::custom("graphical_mcf", |s| 1.0 / (1.0 + s * s), |_| 1.0)
    }

    pub fn custom(
        name: &str,
        alpha: impl Fn(f64) -> f64 + Send + Sync + 'static,
        beta: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
            linear: false,
        }
    }

    pub fn alpha(&self, s: f64) -> f64 {
        (self.alpha)(s)
    }

    pub fn beta(&self, s: f64) -> f64 {
        (self.beta)(s)
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatFlowConfig {
    /// Number of cells on `[−ℓ, ℓ]`.
    pub n: usize,
    pub t_final: f64,
    /// Number of recorded snapshots after `t = 0`.
    pub records: usize,
    /// Implicit steps per record (nonlinear profiles only).
    pub substeps: usize,
}

impl HeatFlowConfig {
    pub fn new(n: usize, t_final: f64) -> Self {
        Self {
            n,
            t_final,
            records: 150,
            substeps: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    /// Cell centres.
    pub x: Vec<f64>,
    pub times: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub osc: Vec<f64>,
}

impl Trajectory {
    pub fn spacing(&self) -> f64 {
        self.x[1] - self.x[0]
    }

    /// Whether `osc` never increases beyond relative rounding `tol`.
    pub fn oscillation_non_increasing(&self, tol: f64) -> bool {
        self.osc.windows(2).all(|w| w[1] <= w[0] * (1.0 + tol) + f64::MIN_POSITIVE)
    }

    /// `t,osc` rows with a header line.
    pub fn oscillation_csv(&self) -> String {
        let mut out = String::from("t,osc\n");
        for (t, o) in self.times.iter().zip(&self.osc) {
            out.push_str(&format!("{t},{o:e}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    pub fitted_rate: f64,
    pub target_rate: f64,
    pub fit_window: (f64, f64),
    pub fit_residual: f64,
}

impl DecayFit {
    pub fn relative_error(&self) -> f64 {
        (self.fitted_rate - self.target_rate).abs() / self.target_rate.abs()
    }

    pub fn accepted(&self) -> bool {
        self.fit_residual < FIT_RESIDUAL_MAX
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeatFlowResult {
    pub profile: String,
    pub trajectory: Trajectory,
    pub fit: DecayFit,
}

pub fn oscillation(u: &[f64]) -> f64 {
    let (lo, hi) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    hi - lo
}

/// Even extension of a weight given on `[0, ℓ]`.
fn even_value<W: Weight>(weight: &W, x: f64) -> f64 {
    weight.value(x.abs())
}

/// Odd extension of the drift `τ = −w'/w`.
fn odd_drift<W: Weight>(weight: &W, x: f64) -> f64 {
    weight.drift(x.abs()) * x.signum()
}

fn cell_centres(half_length: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * half_length / n as f64;
    (0..n).map(|i| -half_length + (i as f64 + 0.5) * h).collect()
}

/// Exact-in-time evolution of the linear flow `u_t = w⁻¹ (w u')'` with
/// zero-flux ends, through the eigendecomposition of the symmetrized
/// finite-volume operator.
#[derive(Debug, Clone)]
pub struct LinearFlow {
    x: Vec<f64>,
    sqrt_mass: Vec<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl LinearFlow {
    pub fn new<W: Weight>(weight: &W, half_length: f64, n: usize) -> Result<Self> {
        check_flow_inputs(weight, half_length, n)?;
        let x = cell_centres(half_length, n);
        let h = 2.0 * half_length / n as f64;
        let mass: Vec<f64> = x.iter().map(|&xi| even_value(weight, xi) * h).collect();
        if mass.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(Error::Domain("weight is not positive at a cell centre".into()));
        }
        let conductance: Vec<f64> = (1..n)
            .map(|i| even_value(weight, -half_length + i as f64 * h) / h)
            .collect();
        let sqrt_mass: Vec<f64> = mass.iter().map(|m| m.sqrt()).collect();
        let mut s = DMatrix::<f64>::zeros(n, n);
        for (i, c) in conductance.iter().enumerate() {
            s[(i, i)] += c;
            s[(i + 1, i + 1)] += c;
            let off = -c / (sqrt_mass[i] * sqrt_mass[i + 1]);
            s[(i, i + 1)] = off;
            s[(i + 1, i)] = off;
        }
        for i in 0..n {
            s[(i, i)] /= mass[i];
        }
        let eig = SymmetricEigen::new(s);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        // the constant mode is exactly conserved
        eigenvalues[0] = 0.0;
        let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Self {
            x,
            sqrt_mass,
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.x
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Smallest nonzero eigenvalue of the discrete operator.
    pub fn first_nonzero(&self) -> f64 {
        self.eigenvalues[1]
    }

    /// Modal coefficients of `u0` sampled at the cell centres.
    pub fn project(&self, u0: &[f64]) -> Vec<f64> {
        let y: Vec<f64> = u0.iter().zip(&self.sqrt_mass).map(|(u, s)| u * s).collect();
        (0..self.x.len())
            .map(|k| {
                self.eigenvectors
                    .column(k)
                    .iter()
                    .zip(&y)
                    .map(|(q, v)| q * v)
                    .sum()
            })
            .collect()
    }

    /// Solution at time `t` from modal coefficients.
    pub fn evaluate(&self, coefficients: &[f64], t: f64) -> Vec<f64> {
        let n = self.x.len();
        let decayed: Vec<f64> = coefficients
            .iter()
            .zip(&self.eigenvalues)
            .map(|(c, l)| c * (-l * t).exp())
            .collect();
        (0..n)
            .map(|i| {
                let row: f64 = (0..n).map(|k| self.eigenvectors[(i, k)] * decayed[k]).sum();
                row / self.sqrt_mass[i]
            })
            .collect()
    }

    pub fn evolve(&self, u0: &[f64], times: &[f64]) -> Vec<Vec<f64>> {
        let c = self.project(u0);
        times.iter().map(|&t| self.evaluate(&c, t)).collect()
    }
}

fn check_flow_inputs<W: Weight>(weight: &W, half_length: f64, n: usize) -> Result<()> {
    if !weight.is_even() {
        return Err(Error::Domain("heat flow on [−ℓ, ℓ] needs an even weight".into()));
    }
    if !(half_length > 0.0 && half_length.is_finite()) {
        return Err(Error::Domain(format!("half-length must be positive, got {half_length}")));
    }
    if half_length > weight.positivity_radius() * (1.0 + 1e-12) {
        return Err(Error::Domain("half-length exceeds the weight positivity radius".into()));
    }
    if n < 16 {
        return Err(Error::InvalidInput(format!("need at least 16 cells, got {n}")));
    }
    Ok(())
}

/// Least-squares fit of `log osc` against `t` over the final third of the
/// recorded window.
pub fn fit_decay(times: &[f64], osc: &[f64], target_rate: f64) -> DecayFit {
    let t_end = *times.last().expect("non-empty trajectory");
    let start = t_end * 2.0 / 3.0;
    let pts: Vec<(f64, f64)> = times
        .iter()
        .zip(osc)
        .filter(|(t, o)| **t >= start && **o > 0.0)
        .map(|(t, o)| (*t, o.ln()))
        .collect();
    let k = pts.len() as f64;
    if pts.len() < 3 {
        return DecayFit {
            fitted_rate: f64::NAN,
            target_rate,
            fit_window: (start, t_end),
            fit_residual: f64::INFINITY,
        };
    }
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let slope = sxy / sxx;
    let rms = (pts
        .iter()
        .map(|p| (p.1 - (my + slope * (p.0 - mt))).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    DecayFit {
        fitted_rate: -slope,
        target_rate,
        fit_window: (start, t_end),
        fit_residual: rms,
    }
}

/// One linearly implicit Euler step with lagged coefficients. Centred
/// convection is used where it keeps the matrix an M-matrix, upwind
/// otherwise.
fn implicit_step(
    u: &[f64],
    drift: &[f64],
    profile: &FlowProfile,
    h: f64,
    dt: f64,
) -> Vec<f64> {
    let n = u.len();
    let mut lower = vec![0.0; n - 1];
    let mut diag = vec![1.0; n];
    let mut upper = vec![0.0; n - 1];
    for i in 0..n {
        let left = if i == 0 { u[0] } else { u[i - 1] };
        let right = if i == n - 1 { u[n - 1] } else { u[i + 1] };
        let grad = (right - left) / (2.0 * h);
        let a = profile.alpha(grad) / (h * h);
        let c = drift[i] * profile.beta(grad);
        let (mut am, mut ap) = if c.abs() * h <= 2.0 * profile.alpha(grad) {
            (a + c / (2.0 * h), a - c / (2.0 * h))
        } else if c > 0.0 {
            (a + c / h, a)
        } else {
            (a, a - c / h)
        };
        // reflected ghost cells remove the outward coupling
        if i == 0 {
            am = 0.0;
        }
        if i == n - 1 {
            ap = 0.0;
        }
        diag[i] += dt * (am + ap);
        if i > 0 {
            lower[i - 1] = -dt * am;
        }
        if i + 1 < n {
            upper[i] = -dt * ap;
        }
    }
    solve_tridiagonal(&lower, &diag, &upper, u)
}

fn integrate_nonlinear<W: Weight>(
    weight: &W,
    profile: &FlowProfile,
    half_length: f64,
    u0: Vec<f64>,
    config: &HeatFlowConfig,
    times: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let n = config.n;
    let h = 2.0 * half_length / n as f64;
    let x = cell_centres(half_length, n);
    let drift: Vec<f64> = x.iter().map(|&xi| odd_drift(weight, xi)).collect();
    if drift.iter().any(|d| !d.is_finite()) {
        return Err(Error::Domain("drift is not finite at a cell centre".into()));
    }
    let mut out = vec![u0.clone()];
    let mut u = u0;
    let mut t = 0.0;
    for &target in &times[1..] {
        let base_dt = (target - t) / config.substeps as f64;
        while t < target * (1.0 - 1e-14) {
            let osc_old = oscillation(&u);
            let mut dt = base_dt.min(target - t);
            let mut halvings = 0;
            loop {
                let next = implicit_step(&u, &drift, profile, h, dt);
                let finite = next.iter().all(|v| v.is_finite());
                if finite && oscillation(&next) <= osc_old * (1.0 + 1e-12) + 1e-300 {
                    u = next;
                    t += dt;
                    break;
                }
                halvings += 1;
                if halvings > 30 {
                    return Err(Error::StabilityFailure(format!(
                        "implicit step failed near t = {t} after {halvings} halvings"
                    )));
                }
                dt *= 0.5;
            }
        }
        t = target;
        out.push(u.clone());
    }
    Ok(out)
}

/// Evolves `u0` under the flow with drift `−w'/w` (extended oddly to
/// `[−ℓ, 0]`) and fits the decay rate of the oscillation.
///
/// `target_rate` defaults to the first eigenvalue of the matching mixed
/// problem on `[0, ℓ]`.
pub fn heatflow_1d<W: Weight>(
    weight: &W,
    profile: &FlowProfile,
    half_length: f64,
    u0: &dyn Fn(f64) -> f64,
    config: &HeatFlowConfig,
    target_rate: Option<f64>,
) -> Result<HeatFlowResult> {
    check_flow_inputs(weight, half_length, config.n)?;
    if !(config.t_final > 0.0) || config.records < 3 || config.substeps == 0 {
        return Err(Error::InvalidInput("invalid heat-flow time configuration".into()));
    }
    let x = cell_centres(half_length, config.n);
    let initial: Vec<f64> = x.iter().map(|&xi| u0(xi)).collect();
    let scale = initial.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if !(oscillation(&initial) > 1e-14 * scale.max(1e-300)) {
        return Err(Error::DegenerateInitialData);
    }
    let target = match target_rate {
        Some(r) => r,
        None => solve_shooting(&SlProblem::mixed(weight, half_length), 1e-12)?.lambda,
    };
    let times: Vec<f64> = (0..=config.records)
        .map(|k| config.t_final * k as f64 / config.records as f64)
        .collect();
    let u = if profile.is_linear() {
        LinearFlow::new(weight, half_length, config.n)?.evolve(&initial, &times)
    } else {
        integrate_nonlinear(weight, profile, half_length, initial, config, &times)?
    };
    let osc: Vec<f64> = u.iter().map(|s| oscillation(s)).collect();
    let fit = fit_decay(&times, &osc, target);
    Ok(HeatFlowResult {
        profile: profile.name.clone(),
        trajectory: Trajectory { x, times, u, osc },
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::CurvatureParams;
    use crate::weight::ModelWeight;
    use std::f64::consts::PI;

    fn smooth_sign(x: f64) -> f64 {
        (6.0 * x).tanh() + 0.3 * (2.0 * PI * x).cos()
    }

    #[test]
    fn flat_decay_rate() {
        let cfg = HeatFlowConfig::new(200, 3.0);
        let r = heatflow_1d(&ModelWeight::flat(), &FlowProfile::linear(), 0.5, &smooth_sign, &cfg, None)
            .unwrap();
        assert!((r.fit.target_rate - PI * PI).abs() < 1e-9);
        assert!(r.fit.accepted());
        assert!(r.fit.relative_error() < 1e-3, "{:?}", r.fit);
        assert!(r.trajectory.oscillation_non_increasing(1e-10));
    }

    #[test]
    fn curved_decay_rate() {
        let p = CurvatureParams::new(2, 0.0, 1.0).unwrap();
        let cfg = HeatFlowConfig::new(300, 8.0);
        let r = heatflow_1d(&ModelWeight::kahler(&p), &FlowProfile::linear(), PI / 2.0, &|x| x.sin() + 0.2, &cfg, None)
            .unwrap();
        assert!((r.fit.target_rate - 3.0).abs() < 1e-6);
        assert!(r.fit.relative_error() < 1e-2, "{:?}", r.fit);
    }

    #[test]
    fn discrete_spectrum_of_flat_flow() {
        let n = 64;
        let flow = LinearFlow::new(&ModelWeight::flat(), 0.5, n).unwrap();
        let h = 1.0 / n as f64;
        for k in 1..4 {
            let exact = 4.0 / (h * h) * (k as f64 * PI * h / 2.0).sin().powi(2);
            assert!((flow.eigenvalues()[k] - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn mcf_oscillation_is_non_increasing() {
        let cfg = HeatFlowConfig::new(200, 0.5);
        let r = heatflow_1d(
            &ModelWeight::flat(),
            &FlowProfile::graphical_mcf(),
            0.5,
            &|x| 3.0 * smooth_sign(x),
            &cfg,
            None,
        )
        .unwrap();
        assert!(r.trajectory.oscillation_non_increasing(1e-12));
        assert!(r.trajectory.osc.last().unwrap() < &r.trajectory.osc[0]);
    }

    #[test]
    fn nonlinear_drift_flow_keeps_maximum_principle() {
        let p = CurvatureParams::new(3, 0.1, 0.3).unwrap();
        let w = ModelWeight::kahler(&p);
        let cfg = HeatFlowConfig::new(120, 1.0);
        let prof = FlowProfile::custom("soft", |s| 1.0 / (1.0 + s * s), |s| 1.0 + 0.5 / (1.0 + s * s));
        let r = heatflow_1d(&w, &prof, 1.2, &smooth_sign, &cfg, None).unwrap();
        assert!(r.trajectory.oscillation_non_increasing(1e-12));
    }

    #[test]
    fn constant_initial_data_is_rejected() {
        let cfg = HeatFlowConfig::new(50, 1.0);
        let r = heatflow_1d(&ModelWeight::flat(), &FlowProfile::linear(), 0.5, &|_| 2.0, &cfg, None);
        assert!(matches!(r, Err(Error::DegenerateInitialData)));
    }

    #[test]
    fn odd_weight_is_rejected() {
        let p = CurvatureParams::new(1, 0.0, 0.0).unwrap();
        let w = ModelWeight::kahler_dirichlet(&p, 0.5);
        assert!(matches!(LinearFlow::new(&w, 0.5, 32), Err(Error::Domain(_))));
    }

    #[test]
    fn csv_has_header() {
        let cfg = HeatFlowConfig::new(32, 0.1);
        let r = heatflow_1d(&ModelWeight::flat(), &FlowProfile::linear(), 0.5, &smooth_sign, &cfg, Some(PI * PI))
            .unwrap();
        let csv = r.trajectory.oscillation_csv();
        assert!(csv.starts_with("t,osc\n"));
        assert_eq!(csv.lines().count(), cfg.records + 2);
    }
}
