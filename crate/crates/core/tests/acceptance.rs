//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails or overruns its time budget.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kahler_bounds::bounds::{
    kahler_dirichlet_bound, kahler_neumann_bound, riemannian_neumann_bound, SolverConfig,
};
use kahler_bounds::coefficients::{first_zero, CurvatureParams};
use kahler_bounds::sturm_liouville::{neumann_first_nonzero_direct, solve_fd, solve_shooting, SlProblem};
use kahler_bounds::verification::comparison::{
    comparison_check, random_convex_profiles, ComparisonOptions, RandomProfileOptions,
};
use kahler_bounds::verification::envelope::{envelope_from_eigenfunction, modulus_envelope_check};
use kahler_bounds::verification::heatflow::{
    heatflow_1d, oscillation, FlowProfile, HeatFlowConfig, LinearFlow, Trajectory,
};
use kahler_bounds::verification::surface::{surface_eigen, SurfaceProfile};
use kahler_bounds::weight::ModelWeight;

const SHOOT_TOL: f64 = 1e-7;
const FD_TOL: f64 = 1e-4;
const HALF_INTERVAL_TOL: f64 = 1e-6;
const REDUCTION_TOL: f64 = 1e-8;
const RIEMANN_FLAT_TOL: f64 = 1e-7;
const RIEMANN_ROUND_TOL: f64 = 1e-5;
const AGREEMENT_TOL: f64 = 1e-5;
const DECAY_TOL: f64 = 1e-2;
const ENVELOPE_TOL: f64 = 1e-6;
const SPHERE_TOL: f64 = 5e-3;
const COLLAPSE_CEILING: f64 = 1.10;
const SEED: u64 = 1729;

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn worst<I: IntoIterator<Item = (String, f64)>>(items: I, tol: f64) -> Outcome {
    let mut max = f64::NEG_INFINITY;
    let mut at = String::new();
    let mut count = 0;
    for (label, err) in items {
        count += 1;
        if !(err <= max) {
            max = err;
            at = label;
        }
    }
    let summary = format!("{count} cases, worst {max:.2e} at {at} (tol {tol:.0e})");
    if max <= tol {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn c1_closed_forms() -> Outcome {
    let mut cases: Vec<(String, CurvatureParams, f64, f64)> = Vec::new();
    for d in [0.5, 1.0, PI] {
        for m in [1, 2, 5] {
            cases.push((format!("flat m={m} D={d:.3}"), CurvatureParams::new(m, 0.0, 0.0).unwrap(), d, PI * PI / (d * d)));
        }
    }
    for k1 in [0.25, 1.0] {
        cases.push((
            format!("k1={k1} at pi/(2 sqrt k1)"),
            CurvatureParams::new(2, k1, 0.0).unwrap(),
            PI / (2.0 * k1.sqrt()),
            8.0 * k1,
        ));
    }
    for m in [2, 3, 5] {
        cases.push((format!("k2=1 m={m} at pi"), CurvatureParams::new(m, 0.0, 1.0).unwrap(), PI, f64::from(2 * m - 1)));
    }
    let mut shoot = Vec::new();
    let mut fd = Vec::new();
    for (label, p, d, exact) in cases {
        let b = kahler_neumann_bound(&p, d, &cfg()).map_err(|e| format!("{label}: {e}"))?;
        shoot.push((label.clone(), rel(b.shooting, exact)));
        fd.push((label, rel(b.finite_difference, exact)));
    }
    let s = worst(shoot, SHOOT_TOL);
    let f = worst(fd, FD_TOL);
    match (s, f) {
        (Ok(a), Ok(b)) => Ok(format!("shooting: {a}; fd: {b}")),
        (a, b) => Err(format!("shooting: {a:?}; fd: {b:?}")),
    }
}

const TUPLES_ALL_SIGNS: [(u32, f64, f64, f64); 5] = [
    (2, 0.3, 0.5, 1.5),
    (3, -0.2, -0.4, 2.0),
    (1, 0.5, 0.0, 1.2),
    (4, 0.0, 1.0, 2.5),
    (2, -0.5, 0.3, 1.8),
];

fn c2_half_interval() -> Outcome {
    let mut errs = Vec::new();
    for (m, k1, k2, d) in TUPLES_ALL_SIGNS {
        let w = ModelWeight::kahler(&CurvatureParams::new(m, k1, k2).unwrap());
        let label = format!("({m},{k1},{k2},{d})");
        let half = solve_shooting(&SlProblem::mixed(&w, d / 2.0), 1e-12).map_err(|e| e.to_string())?;
        let full = neumann_first_nonzero_direct(&w, d / 2.0, 2000).map_err(|e| e.to_string())?;
        errs.push((label, rel(full.lambda, half.lambda)));
    }
    worst(errs, HALF_INTERVAL_TOL)
}

fn c3_reduction() -> Outcome {
    let tuples = [
        (1, 0.4, 0.0, 0.6),
        (2, 0.25, 0.25, 0.5),
        (3, -0.3, -0.1, 1.0),
        (2, 0.0, 0.8, 0.9),
        (5, -0.2, 0.2, 0.7),
    ];
    let mut errs = Vec::new();
    for (m, k1, k2, r) in tuples {
        let p = CurvatureParams::new(m, k1, k2).unwrap();
        let dir = kahler_dirichlet_bound(&p, 0.0, r, &cfg()).map_err(|e| e.to_string())?;
        let neu = kahler_neumann_bound(&p, 2.0 * r, &cfg()).map_err(|e| e.to_string())?;
        errs.push((format!("({m},{k1},{k2},R={r})"), rel(dir.value, neu.value)));
    }
    worst(errs, REDUCTION_TOL)
}

fn c4_riemannian() -> Outcome {
    let mut flat = Vec::new();
    let mut round = Vec::new();
    for n in [2, 3, 5] {
        for d in [0.5, 1.0, 2.0] {
            let b = riemannian_neumann_bound(n, 0.0, d, &cfg()).map_err(|e| e.to_string())?;
            flat.push((format!("n={n} D={d}"), rel(b.value, PI * PI / (d * d))));
        }
        let b = riemannian_neumann_bound(n, 1.0, PI, &cfg()).map_err(|e| e.to_string())?;
        round.push((format!("n={n} round"), rel(b.value, f64::from(n))));
    }
    match (worst(flat, RIEMANN_FLAT_TOL), worst(round, RIEMANN_ROUND_TOL)) {
        (Ok(a), Ok(b)) => Ok(format!("k=0: {a}; k=1: {b}")),
        (a, b) => Err(format!("k=0: {a:?}; k=1: {b:?}")),
    }
}

fn c5_cross_method() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut errs = Vec::new();
    while errs.len() < 20 {
        let m = rng.gen_range(1..=5);
        let k1: f64 = rng.gen_range(-1.0..1.0);
        let k2: f64 = rng.gen_range(-1.0..1.0);
        let mut cap = 4.0_f64;
        if k1 > 0.0 {
            cap = cap.min(first_zero(4.0 * k1, 0.0) * 2.0);
        }
        if m >= 2 && k2 > 0.0 {
            cap = cap.min(PI / k2.sqrt());
        }
        let d = rng.gen_range(0.2..0.95) * cap;
        let w = ModelWeight::kahler(&CurvatureParams::new(m, k1, k2).unwrap());
        let problem = SlProblem::mixed(&w, d / 2.0);
        let s = solve_shooting(&problem, 1e-10).map_err(|e| e.to_string())?;
        let f = solve_fd(&problem, 2000).map_err(|e| e.to_string())?;
        errs.push((format!("({m},{k1:.3},{k2:.3},D={d:.3})"), rel(f.lambda, s.lambda)));
    }
    worst(errs, AGREEMENT_TOL)
}

fn c6_heat_decay() -> Outcome {
    let u0 = |x: f64| (3.0 * x).tanh() + 0.4 * (1.3 * x).cos() + 0.2 * (2.1 * x).sin();
    let cases: [(&str, CurvatureParams, f64, f64, Option<f64>); 3] = [
        ("flat D=1", CurvatureParams::new(2, 0.0, 0.0).unwrap(), 1.0, 1.5, Some(PI * PI)),
        ("k2=1 m=2 D=pi", CurvatureParams::new(2, 0.0, 1.0).unwrap(), PI, 5.0, Some(3.0)),
        ("k1=-0.25 k2=-0.5 D=2", CurvatureParams::new(2, -0.25, -0.5).unwrap(), 2.0, 9.0, None),
    ];
    let mut errs = Vec::new();
    for (label, p, d, t, target) in cases {
        let w = ModelWeight::kahler(&p);
        let scaled = |x: f64| u0(2.0 * x / d);
        let r = heatflow_1d(&w, &FlowProfile::linear(), d / 2.0, &scaled, &HeatFlowConfig::new(400, t), target)
            .map_err(|e| format!("{label}: {e}"))?;
        if !r.trajectory.oscillation_non_increasing(1e-10) {
            return Err(format!("{label}: oscillation increased"));
        }
        errs.push((label.to_string(), rel(r.fit.fitted_rate, r.fit.target_rate)));
    }
    worst(errs, DECAY_TOL)
}

fn c7_envelope() -> Outcome {
    let w = ModelWeight::flat();
    let n = 1000;
    let flow = LinearFlow::new(&w, 0.5, n).map_err(|e| e.to_string())?;
    let x = flow.grid().to_vec();
    let h = x[1] - x[0];
    let times: Vec<f64> = (0..=60).map(|i| 0.005 * f64::from(i)).collect();
    let data: [(&str, fn(f64) -> f64); 3] = [
        ("sin", |x| (PI * x).sin()),
        ("tanh", |x| (20.0 * x).tanh()),
        ("bump", |x| (-30.0 * (x - 0.2).powi(2)).exp()),
    ];
    let mut errs = Vec::new();
    for (label, f) in data {
        let u0: Vec<f64> = x.iter().map(|&s| f(s)).collect();
        let u = flow.evolve(&u0, &times);
        let osc = u.iter().map(|v| oscillation(v)).collect();
        let traj = Trajectory {
            x: x.clone(),
            times: times.clone(),
            u,
            osc,
        };
        let env = envelope_from_eigenfunction(&w, 0.5, PI * PI, h, n, &u0).map_err(|e| e.to_string())?;
        let check = modulus_envelope_check(&traj, &env, ENVELOPE_TOL);
        errs.push((label.to_string(), check.max_violation.max(0.0)));
    }
    worst(errs, ENVELOPE_TOL)
}

fn c8_sphere() -> Outcome {
    let mut errs = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        let s = SurfaceProfile::sphere(a).map_err(|e| e.to_string())?;
        let e = surface_eigen(&s, 3, 400).map_err(|e| e.to_string())?;
        let p = CurvatureParams::new(1, 1.0 / (4.0 * a * a), 0.0).unwrap();
        let b = kahler_neumann_bound(&p, PI * a, &cfg()).map_err(|e| e.to_string())?;
        errs.push((format!("a={a} spectrum"), rel(e.mu1, 2.0 / (a * a))));
        errs.push((format!("a={a} bound"), rel(e.mu1, b.value)));
    }
    worst(errs, SPHERE_TOL)
}

fn c9_surfaces() -> Outcome {
    let profiles = random_convex_profiles(SEED, 10, &RandomProfileOptions::default()).map_err(|e| e.to_string())?;
    let opts = ComparisonOptions::default();
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for p in &profiles {
        let c = comparison_check(p, &opts).map_err(|e| format!("{}: {e}", p.name))?;
        min_margin = min_margin.min(c.margin + c.slack);
        if !c.passed {
            failures.push(format!("{} margin {:.3e} slack {:.1e}", c.profile, c.margin, c.slack));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} profiles, min margin + slack {min_margin:.3e}", profiles.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn c10_collapse() -> Outcome {
    let opts = ComparisonOptions::default();
    let mut ratios = Vec::new();
    for eps in [0.2, 0.05, 0.02] {
        let c = comparison_check(&SurfaceProfile::capsule(eps, 1.0).map_err(|e| e.to_string())?, &opts)
            .map_err(|e| e.to_string())?;
        ratios.push(c.flat_ratio());
    }
    let summary = format!("mu1 D^2/pi^2 = {ratios:.4?} at eps/L = [0.2, 0.05, 0.02]");
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    if decreasing && ratios[2] <= COLLAPSE_CEILING && ratios[2] >= 1.0 - 1e-9 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 closed-form rows", c1_closed_forms, 10),
        ("2 full vs half interval", c2_half_interval, 10),
        ("3 Dirichlet/Neumann reduction", c3_reduction, 5),
        ("4 Riemannian sharp cases", c4_riemannian, 10),
        ("5 cross-method agreement", c5_cross_method, 30),
        ("6 heat-flow decay rate", c6_heat_decay, 60),
        ("7 modulus envelope", c7_envelope, 60),
        ("8 sphere sharpness", c8_sphere, 30),
        ("9 comparison on surfaces", c9_surfaces, 120),
        ("10 collapsing sharpness", c10_collapse, 120),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let on_time = elapsed < Duration::from_secs(budget);
        let (ok, detail) = match outcome {
            Ok(d) => (on_time, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {detail} [{:.1}s / {budget}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
