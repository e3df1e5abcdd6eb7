//! Named verification suites producing per-check JSON reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    explicit_bound_table, kahler_dirichlet_bound, kahler_neumann_bound, monotonicity_scan, SolverConfig,
};
use crate::coefficients::CurvatureParams;
use crate::error::{Error, Result};
use crate::sturm_liouville::{neumann_first_nonzero_direct, solve_shooting, SlProblem};
use crate::verification::comparison::{comparison_check, random_convex_profiles, ComparisonOptions, RandomProfileOptions};
use crate::verification::heatflow::{heatflow_1d, FlowProfile, HeatFlowConfig};
use crate::verification::surface::{surface_eigen, SurfaceProfile};
use crate::weight::ModelWeight;

/// Seed used by randomized suites unless another is given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    HalfInterval,
    ClosedForms,
    DirichletIdentity,
    Heatflow,
    Sphere,
    Surfaces,
    Monotonicity,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "all",
        "lemma32",
        "prop13",
        "dirichlet-identity",
        "heatflow",
        "sphere",
        "surfaces",
        "monotonicity",
    ];

    const INDIVIDUAL: [Suite; 7] = [
        Suite::HalfInterval,
        Suite::ClosedForms,
        Suite::DirichletIdentity,
        Suite::Heatflow,
        Suite::Sphere,
        Suite::Surfaces,
        Suite::Monotonicity,
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "lemma32" => Suite::HalfInterval,
            "prop13" => Suite::ClosedForms,
            "dirichlet-identity" => Suite::DirichletIdentity,
            "heatflow" => Suite::Heatflow,
            "sphere" => Suite::Sphere,
            "surfaces" => Suite::Surfaces,
            "monotonicity" => Suite::Monotonicity,
            other => return Err(Error::InvalidInput(format!("unknown suite '{other}'"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Suite::INDIVIDUAL.iter().position(|s| s == self).map_or(0, |i| i + 1);
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub inputs: Value,
    pub computed: Value,
    /// Signed distance to failure: nonnegative iff the check passes.
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct Collector {
    suite: Suite,
    checks: Vec<CheckReport>,
}

impl Collector {
    fn push(&mut self, check: &str, inputs: Value, outcome: Result<(Value, f64)>) {
        let (computed, margin) = match outcome {
            Ok(v) => v,
            Err(e) => (json!({ "error": e.to_string() }), f64::NEG_INFINITY),
        };
        self.checks.push(CheckReport {
            suite: self.suite.to_string(),
            check: check.into(),
            inputs,
            computed,
            passed: margin >= 0.0,
            margin: if margin.is_finite() { margin } else { -1.0 },
        });
    }
}

/// Parameter tuples `(m, κ₁, κ₂, D)` spanning curvature signs.
pub const HALF_INTERVAL_TUPLES: [(u32, f64, f64, f64); 5] = [
    (2, 0.3, 0.5, 1.5),
    (3, -0.2, -0.4, 2.0),
    (1, 0.5, 0.0, 1.2),
    (4, 0.0, 1.0, 2.5),
    (2, -0.5, 0.3, 1.8),
];

fn half_interval(c: &mut Collector, config: &SolverConfig) {
    for &(m, k1, k2, d) in &HALF_INTERVAL_TUPLES {
        let inputs = json!({ "m": m, "k1": k1, "k2": k2, "D": d });
        let outcome = (|| {
            let p = CurvatureParams::new(m, k1, k2)?;
            let w = ModelWeight::kahler(&p);
            let half = solve_shooting(&SlProblem::mixed(&w, d / 2.0), config.shoot_tol)?.lambda;
            let full = neumann_first_nonzero_direct(&w, d / 2.0, config.fd_grid)?.lambda;
            let r = rel(full, half);
            Ok((json!({ "half_interval": half, "full_interval": full, "relative": r }), 1e-6 - r))
        })();
        c.push("full_vs_half_interval", inputs, outcome);
    }
}

fn closed_forms(c: &mut Collector, config: &SolverConfig) {
    match explicit_bound_table(config) {
        Ok(rows) => {
            for row in rows {
                let inputs = json!({ "family": row.family, "m": row.m, "k1": row.kappa1, "k2": row.kappa2, "D": row.diameter });
                let margin = 1e-6 - (row.ratio - 1.0).abs();
                c.push("closed_form", inputs, Ok((serde_json::to_value(&row).unwrap_or(Value::Null), margin)));
            }
        }
        Err(e) => c.push("closed_form", Value::Null, Err(e)),
    }
}

/// Tuples `(m, κ₁, κ₂, R)` for the `Λ = 0` reduction identity.
pub const DIRICHLET_TUPLES: [(u32, f64, f64, f64); 5] = [
    (1, 0.4, 0.0, 0.6),
    (2, 0.25, 0.25, 0.5),
    (3, -0.3, -0.1, 1.0),
    (2, 0.0, 0.8, 0.9),
    (5, -0.2, 0.2, 0.7),
];

fn dirichlet_identity(c: &mut Collector, config: &SolverConfig) {
    for &(m, k1, k2, r) in &DIRICHLET_TUPLES {
        let inputs = json!({ "m": m, "k1": k1, "k2": k2, "R": r });
        let outcome = (|| {
            let p = CurvatureParams::new(m, k1, k2)?;
            let dir = kahler_dirichlet_bound(&p, 0.0, r, config)?.value;
            let neu = kahler_neumann_bound(&p, 2.0 * r, config)?.value;
            let d = rel(dir, neu);
            Ok((json!({ "dirichlet": dir, "neumann_2R": neu, "relative": d }), 1e-8 - d))
        })();
        c.push("lambda0_equals_neumann_2R", inputs, outcome);
    }
}

/// Decay cases `(name, m, κ₁, κ₂, D, T)` with `μ̄₁ T ≈ 15`.
pub const HEATFLOW_CASES: [(&str, u32, f64, f64, f64, f64); 3] = [
    ("flat", 2, 0.0, 0.0, 1.0, 1.5),
    ("orthogonal_positive", 2, 0.0, 1.0, PI, 5.0),
    ("negative", 2, -0.25, -0.5, 2.0, 9.0),
];

fn heatflow_initial(x: f64) -> f64 {
    (3.0 * x).tanh() + 0.4 * (1.3 * x).cos() + 0.2 * (2.1 * x).sin()
}

fn heatflow(c: &mut Collector) {
    for &(name, m, k1, k2, d, t) in &HEATFLOW_CASES {
        let inputs = json!({ "case": name, "m": m, "k1": k1, "k2": k2, "D": d, "T": t });
        let outcome = (|| {
            let p = CurvatureParams::new(m, k1, k2)?;
            let w = ModelWeight::kahler(&p);
            let cfg = HeatFlowConfig::new(400, t);
            let scaled = |x: f64| heatflow_initial(2.0 * x / d);
            let r = heatflow_1d(&w, &FlowProfile::linear(), d / 2.0, &scaled, &cfg, None)?;
            let err = r.fit.relative_error();
            let margin = if r.fit.accepted() && r.trajectory.oscillation_non_increasing(1e-10) {
                1e-2 - err
            } else {
                -1.0
            };
            Ok((serde_json::to_value(r.fit).unwrap_or(Value::Null), margin))
        })();
        c.push("decay_rate", inputs, outcome);
    }
    let outcome = (|| {
        let cfg = HeatFlowConfig::new(300, 0.5);
        let r = heatflow_1d(
            &ModelWeight::flat(),
            &FlowProfile::graphical_mcf(),
            0.5,
            &|x| 3.0 * heatflow_initial(2.0 * x),
            &cfg,
            Some(PI * PI),
        )?;
        let ok = r.trajectory.oscillation_non_increasing(1e-12);
        Ok((
            json!({ "initial_osc": r.trajectory.osc[0], "final_osc": r.trajectory.osc.last() }),
            if ok { 0.0 } else { -1.0 },
        ))
    })();
    c.push("mcf_oscillation_monotone", json!({ "profile": "graphical_mcf", "D": 1.0 }), outcome);
}

/// Sphere radii of the sharp-case check.
pub const SPHERE_RADII: [f64; 3] = [0.5, 1.0, 2.0];

fn sphere(c: &mut Collector, config: &SolverConfig) {
    for &a in &SPHERE_RADII {
        let outcome = (|| {
            let s = SurfaceProfile::sphere(a)?;
            let e = surface_eigen(&s, 3, 400)?;
            let exact = 2.0 / (a * a);
            let p = CurvatureParams::new(1, 1.0 / (4.0 * a * a), 0.0)?;
            let bound = kahler_neumann_bound(&p, PI * a, config)?.value;
            let d_exact = rel(e.mu1, exact);
            let d_bound = rel(e.mu1, bound);
            Ok((
                json!({ "mu1": e.mu1, "exact": exact, "bound": bound, "rel_exact": d_exact, "rel_bound": d_bound }),
                5e-3 - d_exact.max(d_bound),
            ))
        })();
        c.push("sphere_equality", json!({ "a": a }), outcome);
    }
}

fn surfaces(c: &mut Collector, seed: u64, config: &SolverConfig) {
    let options = ComparisonOptions {
        solver: *config,
        ..ComparisonOptions::default()
    };
    match random_convex_profiles(seed, 10, &RandomProfileOptions::default()) {
        Ok(profiles) => {
            for p in profiles {
                let outcome = comparison_check(&p, &options).map(|r| {
                    let margin = if r.passed { r.margin.max(0.0) } else { r.margin + r.slack };
                    (
                        json!({
                            "mu1": r.spectrum.mu1, "bound": r.bound, "diameter_upper": r.diameter.value,
                            "k_min": r.k_min, "clamped": r.clamped, "margin": r.margin, "slack": r.slack,
                        }),
                        margin,
                    )
                });
                c.push("comparison_inequality", json!({ "profile": p.name }), outcome);
            }
        }
        Err(e) => c.push("comparison_inequality", json!({ "seed": seed }), Err(e)),
    }
}

fn monotonicity(c: &mut Collector, config: &SolverConfig) {
    let cap = PI / (2.0 * 0.1f64.sqrt());
    let cases: [(u32, f64, f64, Vec<f64>); 2] = [
        (2, 0.0, 0.0, vec![1.0, 2.0, 4.0]),
        (2, 0.1, 0.1, (1..=10).map(|i| cap * i as f64 / 10.5).collect()),
    ];
    for (m, k1, k2, grid) in cases {
        let inputs = json!({ "m": m, "k1": k1, "k2": k2, "D_grid": grid });
        let outcome = CurvatureParams::new(m, k1, k2)
            .and_then(|p| monotonicity_scan(&p, &grid, config))
            .map(|s| {
                let margin = if s.strictly_decreasing { 0.0 } else { -1.0 };
                (serde_json::to_value(&s.points).unwrap_or(Value::Null), margin)
            });
        c.push("strict_decrease", inputs, outcome);
    }
}

/// Runs a suite. Solver failures inside a check are reported as failed
/// checks rather than returned.
pub fn run_suite(suite: Suite, seed: u64, config: &SolverConfig) -> SuiteReport {
    let mut checks = Vec::new();
    let members: Vec<Suite> = if suite == Suite::All {
        Suite::INDIVIDUAL.to_vec()
    } else {
        vec![suite]
    };
    for s in members {
        let mut c = Collector {
            suite: s,
            checks: Vec::new(),
        };
        match s {
            Suite::HalfInterval => half_interval(&mut c, config),
            Suite::ClosedForms => closed_forms(&mut c, config),
            Suite::DirichletIdentity => dirichlet_identity(&mut c, config),
            Suite::Heatflow => heatflow(&mut c),
            Suite::Sphere => sphere(&mut c, config),
            Suite::Surfaces => surfaces(&mut c, seed, config),
            Suite::Monotonicity => monotonicity(&mut c, config),
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(c.checks);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    SuiteReport {
        suite: suite.to_string(),
        seed,
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let cfg = SolverConfig::default();
        for s in [Suite::HalfInterval, Suite::ClosedForms, Suite::DirichletIdentity, Suite::Monotonicity] {
            let r = run_suite(s, DEFAULT_SEED, &cfg);
            assert!(r.all_passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn heatflow_suite_passes() {
        let r = run_suite(Suite::Heatflow, DEFAULT_SEED, &SolverConfig::default());
        assert!(r.all_passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
    }
}
