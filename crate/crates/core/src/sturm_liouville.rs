//! One-dimensional weighted eigenvalue problems `(w φ')' = −λ w φ`.
//!
//! Two independent solvers are provided:
//!
//! * [`solve_shooting`] integrates the first-order system `φ' = u/w`,
//!   `u' = −λ w φ` (so `u = w φ'` stays regular where the drift `−w'/w`
//!   blows up) and locates the first sign change of the boundary residual
//!   by a geometric λ-scan followed by Illinois regula falsi.
//! * [`solve_fd`] assembles a second-order finite-volume pencil and
//!   isolates the target eigenvalue by Sturm bisection, with Richardson
//!   extrapolation between grids `n` and `2n`.
//!
//! When the interval length equals the weight's positivity radius the
//! endpoint is singular. Both solvers then evaluate the eigenvalue as the
//! extrapolated limit of problems on `[0, ℓ*(1 − ε_k)]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{integrate, integrate_sampled, Tolerance};
use crate::tridiag::Pencil;
use crate::weight::Weight;

/// Scan resolution of the λ-bracketing.
pub const SCAN_STEPS_PER_DECADE: f64 = 400.0;
/// Relative setbacks `ε_k` of the limit procedure.
pub const LIMIT_SETBACKS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];
/// Relative distance to the positivity radius treated as "at the radius".
pub const RADIUS_MATCH: f64 = 1e-12;
/// Number of samples in a shooting eigenfunction.
pub const SHOOTING_SAMPLES: usize = 201;

const ODE_TOL: Tolerance = Tolerance {
    rtol: 1e-12,
    atol: 1e-15,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    First,
    FirstNonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Shooting,
    FiniteDifference,
    Rayleigh,
}

/// A weighted eigenvalue problem on `[0, length]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlProblem<W> {
    pub length: f64,
    pub weight: W,
    pub bc_left: BoundaryCondition,
    pub bc_right: BoundaryCondition,
    pub target: Target,
}

impl<W: Weight> SlProblem<W> {
    /// `φ(0) = 0`, `φ'(ℓ) = 0`, first eigenvalue: the half-interval
    /// reduction of the Neumann problem and the Dirichlet model problem.
    pub fn mixed(weight: W, length: f64) -> Self {
        Self {
            length,
            weight,
            bc_left: BoundaryCondition::Dirichlet,
            bc_right: BoundaryCondition::Neumann,
            target: Target::First,
        }
    }

    /// Whether `length` sits on the positivity radius of the weight.
    pub fn is_singular(&self) -> bool {
        let radius = self.weight.positivity_radius();
        radius.is_finite() && self.length >= radius * (1.0 - RADIUS_MATCH)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::Domain(format!(
                "interval length must be positive and finite, got {}",
                self.length
            )));
        }
        let radius = self.weight.positivity_radius();
        if self.length > radius * (1.0 + RADIUS_MATCH) {
            return Err(Error::Domain(format!(
                "interval length {} exceeds the weight positivity radius {radius}",
                self.length
            )));
        }
        let probe_end = if self.is_singular() {
            self.length * (1.0 - LIMIT_SETBACKS[2])
        } else {
            self.length
        };
        for i in 0..=64 {
            let t = probe_end * i as f64 / 64.0;
            let w = self.weight.value(t);
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::Domain(format!(
                    "weight is not positive at t = {t} (w = {w})"
                )));
            }
        }
        Ok(())
    }

    fn zero_is_eigenvalue(&self) -> bool {
        self.bc_left == BoundaryCondition::Neumann && self.bc_right == BoundaryCondition::Neumann
    }

    fn truncated(&self, length: f64) -> SlProblem<&W> {
        SlProblem {
            length,
            weight: &self.weight,
            bc_left: self.bc_left,
            bc_right: self.bc_right,
            target: self.target,
        }
    }
}

/// A computed eigenpair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenResult {
    pub lambda: f64,
    pub grid: Vec<f64>,
    /// Shooting: normalized by `φ'(0) = 1` (or `φ(0) = 1` for a Neumann
    /// left end). Finite differences: max-norm 1.
    pub phi: Vec<f64>,
    pub method: Method,
    /// Shooting: relative boundary residual. Finite differences: Richardson
    /// error estimate `|λ_n − λ_2n| / 3`.
    pub residual: f64,
    pub grid_size: usize,
    /// True when evaluated by the singular-endpoint limit procedure.
    pub limit: bool,
}

impl EigenResult {
    /// `φ(0) = 0` and strictly increasing samples on the grid, up to `tol`
    /// relative to the max-norm.
    pub fn is_monotone_increasing(&self, tol: f64) -> bool {
        let scale = self.phi.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if scale == 0.0 || self.phi[0].abs() > tol * scale {
            return false;
        }
        self.phi.windows(2).all(|w| w[1] - w[0] > -tol * scale)
    }
}

/// Samples of a trial function, optionally with exact derivatives.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Option<Vec<f64>>,
}

impl SampledFunction {
    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.iter().map(|&t| f(t)).collect();
        Self {
            grid,
            values,
            derivatives: None,
        }
    }

    pub fn with_derivative(mut self, df: impl Fn(f64) -> f64) -> Self {
        self.derivatives = Some(self.grid.iter().map(|&t| df(t)).collect());
        self
    }

    pub fn uniform(length: f64, intervals: usize, f: impl Fn(f64) -> f64) -> Self {
        let grid = (0..=intervals)
            .map(|i| length * i as f64 / intervals as f64)
            .collect();
        Self::from_fn(grid, f)
    }
}

// ---------------------------------------------------------------------------
// Shooting

fn initial_state(bc_left: BoundaryCondition, w0: f64) -> [f64; 2] {
    match bc_left {
        BoundaryCondition::Dirichlet => [0.0, w0],
        BoundaryCondition::Neumann => [1.0, 0.0],
    }
}

fn boundary_residual(bc_right: BoundaryCondition, state: [f64; 2]) -> f64 {
    match bc_right {
        BoundaryCondition::Neumann => state[1],
        BoundaryCondition::Dirichlet => state[0],
    }
}

/// Sign of the boundary residual just above `λ = 0`.
fn reference_sign(bc_left: BoundaryCondition, bc_right: BoundaryCondition) -> f64 {
    match (bc_left, bc_right) {
        (BoundaryCondition::Neumann, BoundaryCondition::Neumann) => -1.0,
        _ => 1.0,
    }
}

fn shoot<W: Weight>(problem: &SlProblem<W>, lambda: f64) -> Result<[f64; 2]> {
    let w = &problem.weight;
    let mut rhs = |t: f64, y: &[f64; 2]| {
        let wt = w.value(t);
        [y[1] / wt, -lambda * wt * y[0]]
    };
    let y0 = initial_state(problem.bc_left, w.value(0.0));
    integrate(&mut rhs, 0.0, y0, problem.length, ODE_TOL)
}

/// Finds the smallest positive root of a residual function whose sign just
/// above zero is `reference`. Returns `(root, |S(root)| / scale)`.
fn first_root(
    residual: &mut dyn FnMut(f64) -> Result<f64>,
    reference: f64,
    start: f64,
    lambda_max: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let ratio = 10f64.powf(1.0 / SCAN_STEPS_PER_DECADE);
    let mut hi = start;
    let mut s_hi = residual(hi)?;
    let (mut lo, mut s_lo);
    if s_hi * reference <= 0.0 {
        // The root lies below the scan start; back off by decades.
        lo = hi;
        s_lo = s_hi;
        let floor = start * 1e-14;
        while s_lo * reference <= 0.0 {
            hi = lo;
            s_hi = s_lo;
            lo /= 10.0;
            if lo < floor {
                return Err(Error::NoBracketFound { lambda_max });
            }
            s_lo = residual(lo)?;
        }
        // refine to the scan resolution so the first root is isolated
        let mut a = lo;
        let mut s_a = s_lo;
        while a * ratio < hi {
            let b = a * ratio;
            let s_b = residual(b)?;
            if s_b * reference <= 0.0 {
                hi = b;
                s_hi = s_b;
                break;
            }
            a = b;
            s_a = s_b;
        }
        lo = a;
        s_lo = s_a;
    } else {
        loop {
            lo = hi;
            s_lo = s_hi;
            hi = lo * ratio;
            if hi > lambda_max {
                return Err(Error::NoBracketFound { lambda_max });
            }
            s_hi = residual(hi)?;
            if s_hi * reference <= 0.0 {
                break;
            }
        }
    }
    if s_hi == 0.0 {
        return Ok((hi, 0.0));
    }
    let scale = s_lo.abs().max(s_hi.abs());
    // Illinois regula falsi on [lo, hi].
    let (mut a, mut fa, mut b, mut fb) = (lo, s_lo, hi, s_hi);
    let mut side = 0i8;
    let mut best = (b, fb.abs());
    for _ in 0..300 {
        let c = if fa != fb {
            (a * fb - b * fa) / (fb - fa)
        } else {
            0.5 * (a + b)
        };
        let c = if c > a.min(b) && c < a.max(b) {
            c
        } else {
            0.5 * (a + b)
        };
        let fc = residual(c)?;
        if fc.abs() < best.1 {
            best = (c, fc.abs());
        }
        if fc.abs() <= tol * scale || (b - a).abs() <= 4.0 * f64::EPSILON * c.abs() {
            return Ok((c, fc.abs() / scale));
        }
        if fc * fb < 0.0 {
            a = b;
            fa = fb;
            b = c;
            fb = fc;
            side = 0;
        } else {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }
    }
    Ok((best.0, best.1 / scale))
}

fn shooting_regular<W: Weight>(problem: &SlProblem<W>, tol: f64) -> Result<EigenResult> {
    let ell = problem.length;
    let grid: Vec<f64> = (0..SHOOTING_SAMPLES)
        .map(|i| ell * i as f64 / (SHOOTING_SAMPLES - 1) as f64)
        .collect();
    if problem.zero_is_eigenvalue() && problem.target == Target::First {
        return Ok(EigenResult {
            lambda: 0.0,
            phi: vec![1.0; grid.len()],
            grid,
            method: Method::Shooting,
            residual: 0.0,
            grid_size: SHOOTING_SAMPLES,
            limit: false,
        });
    }
    let start = PI * PI / (4.0 * ell * ell) * 1e-2;
    let lambda_max = 1e4 / (ell * ell);
    let reference = reference_sign(problem.bc_left, problem.bc_right);
    let mut residual = |lambda: f64| -> Result<f64> {
        Ok(boundary_residual(problem.bc_right, shoot(problem, lambda)?))
    };
    let (lambda, rel_residual) = first_root(&mut residual, reference, start, lambda_max, tol)?;
    let phi = eigenfunction_samples(problem, lambda, &grid)?;
    Ok(EigenResult {
        lambda,
        grid,
        phi,
        method: Method::Shooting,
        residual: rel_residual,
        grid_size: SHOOTING_SAMPLES,
        limit: false,
    })
}

/// Samples of the shooting solution at `lambda` on increasing `points`
/// (all in `[0, length]`), with the normalization of [`EigenResult::phi`].
pub fn eigenfunction_samples<W: Weight>(
    problem: &SlProblem<W>,
    lambda: f64,
    points: &[f64],
) -> Result<Vec<f64>> {
    let w = &problem.weight;
    let mut rhs = |t: f64, y: &[f64; 2]| {
        let wt = w.value(t);
        [y[1] / wt, -lambda * wt * y[0]]
    };
    let y0 = initial_state(problem.bc_left, w.value(0.0));
    let states = integrate_sampled(&mut rhs, 0.0, y0, points, ODE_TOL)?;
    let scale = match problem.bc_left {
        BoundaryCondition::Dirichlet => w.value(0.0),
        BoundaryCondition::Neumann => 1.0,
    };
    Ok(states
        .iter()
        .map(|s| match problem.bc_left {
            // with u(0) = w(0) the solution already has φ'(0) = 1
            BoundaryCondition::Dirichlet => s[0],
            BoundaryCondition::Neumann => s[0] / scale,
        })
        .collect())
}

/// Limit of `λ(ℓ*(1 − ε_k))` as `ε_k → 0`, by the observed-order
/// extrapolation of three setbacks. Returns `(value, error_estimate)`.
fn extrapolate_limit(values: [f64; 3]) -> (f64, f64) {
    let d1 = values[0] - values[1];
    let d2 = values[1] - values[2];
    let last = values[2];
    let noise = 1e-11 * last.abs().max(1e-300);
    if d2.abs() <= noise || d1.abs() <= noise || d1 * d2 <= 0.0 {
        return (last, d2.abs());
    }
    let ratio = d1 / d2;
    let order = ratio.log2();
    if !(0.5..=8.0).contains(&order) {
        return (last, d2.abs());
    }
    let correction = d2 / (ratio - 1.0);
    (last - correction, correction.abs())
}

fn with_limit<W: Weight>(
    problem: &SlProblem<W>,
    mut solve: impl FnMut(&SlProblem<&W>) -> Result<EigenResult>,
) -> Result<EigenResult> {
    if !problem.is_singular() {
        return solve(&problem.truncated(problem.length));
    }
    let radius = problem.weight.positivity_radius();
    let mut values = [0.0; 3];
    let mut last = None;
    for (slot, eps) in values.iter_mut().zip(LIMIT_SETBACKS) {
        let r = solve(&problem.truncated(radius * (1.0 - eps)))?;
        *slot = r.lambda;
        last = Some(r);
    }
    let (lambda, error) = extrapolate_limit(values);
    let mut result = last.expect("three setbacks");
    result.lambda = lambda;
    result.residual = result.residual.max(error);
    result.limit = true;
    Ok(result)
}

/// Eigenvalue by shooting on the self-adjoint first-order system.
///
/// `tol` bounds the boundary residual relative to its magnitude at the
/// ends of the initial bracket.
pub fn solve_shooting<W: Weight>(problem: &SlProblem<W>, tol: f64) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    problem.validate()?;
    with_limit(problem, |p| shooting_regular(p, tol))
}

/// First eigenvalue of the mixed problem `φ(0) = 0`, `φ'(ℓ) = 0` written in
/// drift form `φ'' − τ φ' = −λ φ`, by shooting on `(φ, φ')`.
pub fn solve_shooting_drift(
    drift: impl Fn(f64) -> f64,
    length: f64,
    tol: f64,
) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::Domain(format!("interval length must be positive, got {length}")));
    }
    let mut residual = |lambda: f64| -> Result<f64> {
        let mut rhs = |t: f64, y: &[f64; 2]| [y[1], drift(t) * y[1] - lambda * y[0]];
        let y = integrate(&mut rhs, 0.0, [0.0, 1.0], length, ODE_TOL)?;
        Ok(y[1])
    };
    let start = PI * PI / (4.0 * length * length) * 1e-2;
    let (lambda, _) = first_root(&mut residual, 1.0, start, 1e4 / (length * length), tol)?;
    Ok(lambda)
}

// ---------------------------------------------------------------------------
// Finite differences

/// Second-order finite-volume pencil on `[a, b]` with `n` cells; Neumann
/// ends get half-cell masses, Dirichlet ends are eliminated.
fn assemble<W: Weight + ?Sized>(
    weight: &W,
    a: f64,
    b: f64,
    n: usize,
    bc_left: BoundaryCondition,
    bc_right: BoundaryCondition,
) -> (Pencil, Vec<f64>) {
    let h = (b - a) / n as f64;
    let first = usize::from(bc_left == BoundaryCondition::Dirichlet);
    let last = if bc_right == BoundaryCondition::Dirichlet { n - 1 } else { n };
    let face = |i: usize| weight.value(a + (i as f64 + 0.5) * h);
    let mut diag = Vec::with_capacity(last - first + 1);
    let mut off = Vec::with_capacity(last - first);
    let mut mass = Vec::with_capacity(last - first + 1);
    let mut nodes = Vec::with_capacity(last - first + 1);
    for i in first..=last {
        let t = a + i as f64 * h;
        let left = if i > 0 { face(i - 1) } else { 0.0 };
        let right = if i < n { face(i) } else { 0.0 };
        diag.push((left + right) / h);
        if i < last {
            off.push(-right / h);
        }
        let cell = if i == 0 || i == n { 0.5 * h } else { h };
        mass.push(weight.value(t) * cell);
        nodes.push(t);
    }
    (Pencil { diag, off, mass }, nodes)
}

fn discrete_index(left: BoundaryCondition, right: BoundaryCondition, target: Target) -> usize {
    match target {
        Target::First => 0,
        Target::FirstNonzero => {
            usize::from(left == BoundaryCondition::Neumann && right == BoundaryCondition::Neumann)
        }
    }
}

struct Richardson {
    lambda: f64,
    error: f64,
    grid: Vec<f64>,
    phi: Vec<f64>,
}

fn fd_richardson<W: Weight + ?Sized>(
    weight: &W,
    a: f64,
    b: f64,
    n: usize,
    bc_left: BoundaryCondition,
    bc_right: BoundaryCondition,
    target: Target,
) -> Richardson {
    let index = discrete_index(bc_left, bc_right, target);
    let (coarse, _) = assemble(weight, a, b, n, bc_left, bc_right);
    let (fine, nodes) = assemble(weight, a, b, 2 * n, bc_left, bc_right);
    let lambda_coarse = coarse.eigenvalue(index);
    let lambda_fine = fine.eigenvalue(index);
    let mut phi = fine.eigenvector(lambda_fine);
    let (mut grid, mut values) = (nodes, std::mem::take(&mut phi));
    if bc_left == BoundaryCondition::Dirichlet {
        grid.insert(0, a);
        values.insert(0, 0.0);
    }
    if bc_right == BoundaryCondition::Dirichlet {
        grid.push(b);
        values.push(0.0);
    }
    Richardson {
        lambda: (4.0 * lambda_fine - lambda_coarse) / 3.0,
        error: (lambda_coarse - lambda_fine).abs() / 3.0,
        grid,
        phi: values,
    }
}

/// Eigenvalue by finite differences on grids `n` and `2n` with Richardson
/// extrapolation.
pub fn solve_fd<W: Weight>(problem: &SlProblem<W>, n: usize) -> Result<EigenResult> {
    if n < 16 {
        return Err(Error::InvalidInput(format!("grid size must be at least 16, got {n}")));
    }
    problem.validate()?;
    with_limit(problem, |p| {
        let r = fd_richardson(&p.weight, 0.0, p.length, n, p.bc_left, p.bc_right, p.target);
        Ok(EigenResult {
            lambda: r.lambda,
            grid: r.grid,
            phi: r.phi,
            method: Method::FiniteDifference,
            residual: r.error,
            grid_size: n,
            limit: false,
        })
    })
}

/// First nonzero eigenvalue of the Neumann–Neumann problem on the full
/// interval `[−ℓ, ℓ]` for an even weight, by finite differences.
pub fn neumann_first_nonzero_direct<W: Weight>(
    weight: &W,
    half_length: f64,
    n: usize,
) -> Result<EigenResult> {
    if !weight.is_even() {
        return Err(Error::Domain("the full-interval Neumann problem needs an even weight".into()));
    }
    if n < 16 {
        return Err(Error::InvalidInput(format!("grid size must be at least 16, got {n}")));
    }
    // Reuse the half-interval validation (positivity on [0, ℓ], evenness
    // covers [−ℓ, 0]).
    let half = SlProblem::mixed(weight, half_length);
    half.validate()?;
    with_limit(&half, |p| {
        let ell = p.length;
        let r = fd_richardson(
            &p.weight,
            -ell,
            ell,
            n,
            BoundaryCondition::Neumann,
            BoundaryCondition::Neumann,
            Target::FirstNonzero,
        );
        Ok(EigenResult {
            lambda: r.lambda,
            grid: r.grid,
            phi: r.phi,
            method: Method::FiniteDifference,
            residual: r.error,
            grid_size: n,
            limit: false,
        })
    })
}

// ---------------------------------------------------------------------------
// Rayleigh quotient

fn is_uniform(grid: &[f64]) -> bool {
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    grid.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h)
}

fn integrate_samples(grid: &[f64], f: &[f64]) -> f64 {
    let n = grid.len() - 1;
    if n >= 2 && n % 2 == 0 && is_uniform(grid) {
        let h = (grid[n] - grid[0]) / n as f64;
        let mut s = f[0] + f[n];
        for (i, v) in f.iter().enumerate().take(n).skip(1) {
            s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        s * h / 3.0
    } else {
        grid.windows(2)
            .zip(f.windows(2))
            .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
            .sum()
    }
}

/// Second-order finite-difference derivative on an arbitrary grid.
fn sample_derivative(grid: &[f64], v: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let three_point = |i0: usize, at: usize| {
        // derivative at grid[at] of the quadratic through i0, i0+1, i0+2
        let (x0, x1, x2) = (grid[i0], grid[i0 + 1], grid[i0 + 2]);
        let x = grid[at];
        let l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
        let l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
        let l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
        l0 * v[i0] + l1 * v[i0 + 1] + l2 * v[i0 + 2]
    };
    (0..n)
        .map(|i| {
            if i == 0 {
                three_point(0, 0)
            } else if i == n - 1 {
                three_point(n - 3, n - 1)
            } else {
                three_point(i - 1, i)
            }
        })
        .collect()
}

/// `∫ w φ'² / ∫ w φ²` for a trial function on its own grid.
///
/// Simpson's rule on uniform grids with an even number of intervals,
/// trapezoid otherwise. Derivatives are taken from the trial when present,
/// else by second-order finite differences.
pub fn rayleigh_quotient<W: Weight>(problem: &SlProblem<W>, trial: &SampledFunction) -> Result<f64> {
    let n = trial.grid.len();
    if n < 3 || trial.values.len() != n {
        return Err(Error::InvalidInput("trial needs at least 3 matching samples".into()));
    }
    if trial.derivatives.as_ref().is_some_and(|d| d.len() != n) {
        return Err(Error::InvalidInput("derivative samples do not match the grid".into()));
    }
    let scale = trial.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if problem.bc_left == BoundaryCondition::Dirichlet && trial.values[0].abs() > 1e-12 * scale {
        return Err(Error::InvalidInput("trial violates φ(0) = 0".into()));
    }
    if problem.bc_right == BoundaryCondition::Dirichlet && trial.values[n - 1].abs() > 1e-12 * scale {
        return Err(Error::InvalidInput("trial violates φ(ℓ) = 0".into()));
    }
    let derivative = match &trial.derivatives {
        Some(d) => d.clone(),
        None => sample_derivative(&trial.grid, &trial.values),
    };
    let weights: Vec<f64> = trial.grid.iter().map(|&t| problem.weight.value(t)).collect();
    let numerator: Vec<f64> = weights.iter().zip(&derivative).map(|(w, d)| w * d * d).collect();
    let denominator: Vec<f64> = weights.iter().zip(&trial.values).map(|(w, v)| w * v * v).collect();
    let den = integrate_samples(&trial.grid, &denominator);
    if !(den.abs() > 1e-280) {
        return Err(Error::ZeroDenominator(den));
    }
    Ok(integrate_samples(&trial.grid, &numerator) / den)
}
