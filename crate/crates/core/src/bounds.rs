//! First-eigenvalue lower bounds from one-dimensional model problems, with
//! the diameter and inradius validity checks that make them well posed.
//!
//! Every bound is computed twice, by shooting and by finite differences;
//! the shooting value is reported and the relative disagreement recorded.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coefficients::{first_zero, CurvatureParams};
use crate::error::{Error, Result};
use crate::sturm_liouville::{solve_fd, solve_shooting, SlProblem};
use crate::weight::{ModelWeight, Weight};

/// Relative slack allowed when a diameter sits exactly on its cap.
const CAP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Relative boundary-residual tolerance of the shooting solver.
    pub shoot_tol: f64,
    /// Coarse finite-difference grid (Richardson uses `fd_grid` and `2·fd_grid`).
    pub fd_grid: usize,
    /// Largest accepted relative disagreement between the two solvers.
    pub agreement_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            shoot_tol: 1e-12,
            fd_grid: 2000,
            agreement_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremTag {
    KahlerNeumann,
    KahlerDirichlet,
    RiemannianNeumann,
    RiemannianDirichlet,
}

/// One checked constraint `value ≤ limit` (or `<` for inradii).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityCheck {
    pub constraint: String,
    pub value: f64,
    pub limit: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub theorem: TheoremTag,
    pub problem: SlProblem<ModelWeight>,
    pub shooting: f64,
    pub shooting_residual: f64,
    pub finite_difference: f64,
    pub fd_error_estimate: f64,
    pub method_agreement: f64,
    pub validity: Vec<ValidityCheck>,
    /// Evaluated at a weight-vanishing endpoint by the limit procedure.
    pub limit: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub bound: BoundResult,
    pub reference_bound: f64,
    pub reference_name: String,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub m: u32,
    pub kappa1: f64,
    pub kappa2: f64,
    pub diameter: f64,
    pub computed: f64,
    pub expected: f64,
    pub ratio: f64,
    pub limit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub diameter: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityScan {
    pub points: Vec<ScanPoint>,
    pub strictly_decreasing: bool,
}

fn check_length(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {value}")))
    }
}

fn diameter_cap(diameter: f64, maximal: f64, constraint: &str) -> Result<ValidityCheck> {
    let satisfied = diameter <= maximal * (1.0 + CAP_SLACK);
    if !satisfied {
        return Err(Error::DiameterExceedsMaximal {
            diameter,
            maximal,
            constraint: constraint.to_string(),
        });
    }
    Ok(ValidityCheck {
        constraint: constraint.to_string(),
        value: diameter,
        limit: maximal,
        satisfied,
    })
}

fn inradius_caps(inradius: f64, caps: &[(String, f64)]) -> Result<Vec<ValidityCheck>> {
    let mut checks = Vec::with_capacity(caps.len());
    for (name, radius) in caps {
        if !(inradius < *radius) {
            return Err(Error::InradiusExceedsValidity {
                inradius,
                radius: *radius,
                binding: name.clone(),
            });
        }
        checks.push(ValidityCheck {
            constraint: format!("R < first zero of {name}"),
            value: inradius,
            limit: *radius,
            satisfied: true,
        });
    }
    Ok(checks)
}

/// Solves `problem` by both methods and packages the result.
fn solve_both(
    problem: SlProblem<ModelWeight>,
    theorem: TheoremTag,
    validity: Vec<ValidityCheck>,
    config: &SolverConfig,
) -> Result<BoundResult> {
    let shooting = solve_shooting(&problem, config.shoot_tol)?;
    let fd = solve_fd(&problem, config.fd_grid)?;
    let agreement = (shooting.lambda - fd.lambda).abs() / shooting.lambda.abs();
    if !(agreement <= config.agreement_tol) {
        return Err(Error::MethodDisagreement {
            shooting: shooting.lambda,
            finite_difference: fd.lambda,
            relative: agreement,
        });
    }
    Ok(BoundResult {
        value: shooting.lambda,
        theorem,
        problem,
        shooting: shooting.lambda,
        shooting_residual: shooting.residual,
        finite_difference: fd.lambda,
        fd_error_estimate: fd.residual,
        method_agreement: agreement,
        validity,
        limit: shooting.limit,
    })
}

/// Diameter caps for the Kähler Neumann bound: `π/(2√κ₁)` when `κ₁ > 0`
/// and, for `m ≥ 2`, `π/√κ₂` when `κ₂ > 0`.
pub fn kahler_diameter_caps(params: &CurvatureParams) -> Vec<(String, f64)> {
    let mut caps = Vec::new();
    if params.kappa1 > 0.0 {
        caps.push((
            "D <= pi/(2 sqrt(k1))".to_string(),
            PI / (2.0 * params.kappa1.sqrt()),
        ));
    }
    if params.m >= 2 && params.kappa2 > 0.0 {
        caps.push(("D <= pi/sqrt(k2)".to_string(), PI / params.kappa2.sqrt()));
    }
    caps
}

/// `μ̄₁(m, κ₁, κ₂, D)`: the mixed problem with weight `c_{κ₂}^{2m−2} c_{4κ₁}`
/// on `[0, D/2]`.
pub fn kahler_neumann_bound(
    params: &CurvatureParams,
    diameter: f64,
    config: &SolverConfig,
) -> Result<BoundResult> {
    params.validate()?;
    check_length("diameter", diameter)?;
    let validity = kahler_diameter_caps(params)
        .iter()
        .map(|(name, cap)| diameter_cap(diameter, *cap, name))
        .collect::<Result<Vec<_>>>()?;
    let problem = SlProblem::mixed(ModelWeight::kahler(params), diameter / 2.0);
    solve_both(problem, TheoremTag::KahlerNeumann, validity, config)
}

/// `λ̄₁(m, κ₁, κ₂, Λ, R)`: the mixed problem with weight
/// `C_{κ₂,Λ}^{2m−2} C_{4κ₁,Λ}` on `[0, R]`, for `R` strictly below the
/// first zero of every factor.
pub fn kahler_dirichlet_bound(
    params: &CurvatureParams,
    lambda: f64,
    inradius: f64,
    config: &SolverConfig,
) -> Result<BoundResult> {
    params.validate()?;
    check_length("inradius", inradius)?;
    if !lambda.is_finite() {
        return Err(Error::Domain(format!("boundary curvature must be finite, got {lambda}")));
    }
    let mut caps = vec![(
        "C_(4 k1, Lambda)".to_string(),
        first_zero(4.0 * params.kappa1, lambda),
    )];
    if params.m >= 2 {
        caps.push(("C_(k2, Lambda)".to_string(), first_zero(params.kappa2, lambda)));
    }
    let validity = inradius_caps(inradius, &caps)?;
    let problem = SlProblem::mixed(ModelWeight::kahler_dirichlet(params, lambda), inradius);
    solve_both(problem, TheoremTag::KahlerDirichlet, validity, config)
}

fn check_real_dimension(n: u32) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidDimension(format!("real dimension must be at least 2, got {n}")))
    }
}

/// First nonzero Neumann eigenvalue of the model with weight `c_κ^{n−1}` on
/// `[−D/2, D/2]`, for `D ≤ π/√κ` when `κ > 0`.
pub fn riemannian_neumann_bound(
    n: u32,
    kappa: f64,
    diameter: f64,
    config: &SolverConfig,
) -> Result<BoundResult> {
    check_real_dimension(n)?;
    if !kappa.is_finite() {
        return Err(Error::Domain(format!("curvature must be finite, got {kappa}")));
    }
    check_length("diameter", diameter)?;
    let mut validity = Vec::new();
    if kappa > 0.0 {
        validity.push(diameter_cap(diameter, PI / kappa.sqrt(), "D <= pi/sqrt(k)")?);
    }
    let problem = SlProblem::mixed(ModelWeight::riemannian(n, kappa), diameter / 2.0);
    solve_both(problem, TheoremTag::RiemannianNeumann, validity, config)
}

/// First eigenvalue of the mixed problem with weight `C_{κ,Λ}^{n−1}` on
/// `[0, R]`, for `R` strictly below the first zero of `C_{κ,Λ}`.
pub fn riemannian_dirichlet_bound(
    n: u32,
    kappa: f64,
    lambda: f64,
    inradius: f64,
    config: &SolverConfig,
) -> Result<BoundResult> {
    check_real_dimension(n)?;
    if !(kappa.is_finite() && lambda.is_finite()) {
        return Err(Error::Domain("curvature data must be finite".into()));
    }
    check_length("inradius", inradius)?;
    let validity = inradius_caps(
        inradius,
        &[("C_(k, Lambda)".to_string(), first_zero(kappa, lambda))],
    )?;
    let problem = SlProblem::mixed(ModelWeight::riemannian_dirichlet(n, kappa, lambda), inradius);
    solve_both(problem, TheoremTag::RiemannianDirichlet, validity, config)
}

/// Compares the Kähler bound with the Kähler Lichnerowicz value `8κ₁`.
pub fn lichnerowicz_comparison(
    params: &CurvatureParams,
    diameter: f64,
    config: &SolverConfig,
) -> Result<ComparisonReport> {
    if !(params.kappa1 > 0.0 && params.kappa2 >= 0.0) {
        return Err(Error::Domain(format!(
            "Lichnerowicz comparison needs k1 > 0 and k2 >= 0, got k1 = {}, k2 = {}",
            params.kappa1, params.kappa2
        )));
    }
    let bound = kahler_neumann_bound(params, diameter, config)?;
    let reference = 8.0 * params.kappa1;
    Ok(ComparisonReport {
        margin: bound.value - reference,
        reference_bound: reference,
        reference_name: "Kähler Lichnerowicz 8 k1".to_string(),
        bound,
    })
}

/// Dimensions covered by [`explicit_bound_table`].
pub const TABLE_DIMENSIONS: [u32; 4] = [1, 2, 3, 5];

/// The three closed-form families, computed and compared for each `m` in
/// [`TABLE_DIMENSIONS`]: `π²/D²` at `D = 1` for `κ₁ = κ₂ = 0`, `8κ₁` at the
/// maximal diameter for `κ₁ = 1`, and `(2m − 1)κ₂` at the maximal diameter
/// for `κ₂ = 1`.
pub fn explicit_bound_table(config: &SolverConfig) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &m in &TABLE_DIMENSIONS {
        let cases = [
            ("flat", 0.0, 0.0, 1.0, PI * PI),
            ("holomorphic", 1.0, 0.0, PI / 2.0, 8.0),
            ("orthogonal", 0.0, 1.0, PI, f64::from(2 * m - 1)),
        ];
        for (family, k1, k2, d, expected) in cases {
            let params = CurvatureParams::new(m, k1, k2)?;
            let bound = kahler_neumann_bound(&params, d, config)?;
            rows.push(TableRow {
                family: family.to_string(),
                m,
                kappa1: k1,
                kappa2: k2,
                diameter: d,
                computed: bound.value,
                expected,
                ratio: bound.value / expected,
                limit: bound.limit,
            });
        }
    }
    Ok(rows)
}

/// Kähler bound over an increasing diameter grid, with a strict-decrease
/// check.
pub fn monotonicity_scan(
    params: &CurvatureParams,
    diameters: &[f64],
    config: &SolverConfig,
) -> Result<MonotonicityScan> {
    if diameters.is_empty() {
        return Err(Error::InvalidInput("diameter grid is empty".into()));
    }
    if diameters.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput("diameter grid must be strictly increasing".into()));
    }
    let points = diameters
        .iter()
        .map(|&d| {
            kahler_neumann_bound(params, d, config).map(|b| ScanPoint {
                diameter: d,
                value: b.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = points.windows(2).all(|w| w[1].value < w[0].value);
    Ok(MonotonicityScan {
        points,
        strictly_decreasing,
    })
}

impl BoundResult {
    /// Positivity radius of the model weight, for callers that need the
    /// singular endpoint.
    pub fn weight_radius(&self) -> f64 {
        self.problem.weight.positivity_radius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn params(m: u32, k1: f64, k2: f64) -> CurvatureParams {
        CurvatureParams::new(m, k1, k2).unwrap()
    }

    #[test]
    fn kahler_neumann_examples() {
        let b = kahler_neumann_bound(&params(4, 0.0, 0.0), 2.0, &cfg()).unwrap();
        assert!(rel(b.value, PI * PI / 4.0) < 1e-10);
        assert!(!b.limit);
        let b = kahler_neumann_bound(&params(1, 1.0, 0.0), PI / 2.0, &cfg()).unwrap();
        assert!(rel(b.value, 8.0) < 1e-8);
        assert!(b.limit);
        let b = kahler_neumann_bound(&params(2, 0.25, 0.25), 1.0, &cfg()).unwrap();
        assert!(b.method_agreement < 1e-5);
        assert!(b.value > 0.0);
    }

    #[test]
    fn diameter_cap_errors() {
        let e = kahler_neumann_bound(&params(1, 1.0, 0.0), 2.0, &cfg()).unwrap_err();
        match e {
            Error::DiameterExceedsMaximal { maximal, .. } => assert!(rel(maximal, PI / 2.0) < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let e = kahler_neumann_bound(&params(2, 0.0, 1.0), 3.5, &cfg()).unwrap_err();
        assert!(matches!(e, Error::DiameterExceedsMaximal { .. }));
        // the orthogonal cap is inert at m = 1
        assert!(kahler_neumann_bound(&params(1, 0.0, 1.0), 3.5, &cfg()).is_ok());
        assert!(matches!(
            CurvatureParams::new(0, 0.0, 0.0),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn dirichlet_examples() {
        let p = params(2, 0.0, 0.0);
        let b = kahler_dirichlet_bound(&p, 0.5, 1.0, &cfg()).unwrap();
        assert!(b.method_agreement < 1e-5);
        let w = &b.problem.weight;
        assert!((w.value(0.6) - 0.7f64.powi(3)).abs() < 1e-14);

        let e = kahler_dirichlet_bound(&p, 1.0, 1.0, &cfg()).unwrap_err();
        assert!(matches!(e, Error::InradiusExceedsValidity { .. }));
    }

    #[test]
    fn negative_boundary_curvature_lowers_the_bound() {
        // λ̄₁ increases with Λ: a concave boundary weakens the bound.
        let p = params(1, 0.0, 0.0);
        let concave = kahler_dirichlet_bound(&p, -1.0, 1.0, &cfg()).unwrap().value;
        let flat = kahler_dirichlet_bound(&p, 0.0, 1.0, &cfg()).unwrap().value;
        let convex = kahler_dirichlet_bound(&p, 0.5, 1.0, &cfg()).unwrap().value;
        assert!(concave < flat && flat < convex, "{concave} {flat} {convex}");
        assert!(rel(flat, PI * PI / 4.0) < 1e-10);
    }

    #[test]
    fn riemannian_examples() {
        for n in [2, 3, 7] {
            let b = riemannian_neumann_bound(n, 0.0, 1.3, &cfg()).unwrap();
            assert!(rel(b.value, PI * PI / 1.69) < 1e-10);
        }
        let b = riemannian_neumann_bound(3, 1.0, PI, &cfg()).unwrap();
        assert!(rel(b.value, 3.0) < 1e-7);
        for a in [0.5, 2.0] {
            let b = riemannian_neumann_bound(2, 1.0 / (a * a), PI * a, &cfg()).unwrap();
            assert!(rel(b.value, 2.0 / (a * a)) < 1e-7);
        }
        let b = riemannian_dirichlet_bound(3, 0.0, 0.0, 1.0, &cfg()).unwrap();
        assert!(rel(b.value, PI * PI / 4.0) < 1e-10);
        assert!(matches!(
            riemannian_neumann_bound(1, 0.0, 1.0, &cfg()),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            riemannian_neumann_bound(2, 1.0, 3.2, &cfg()),
            Err(Error::DiameterExceedsMaximal { .. })
        ));
    }

    /// Brute-force oracle: plain Dirichlet–Neumann finite differences on a
    /// very fine grid in drift form, independent of the library pencil.
    fn drift_fd_oracle(drift: impl Fn(f64) -> f64, ell: f64, n: usize) -> f64 {
        let h = ell / n as f64;
        // unknowns φ_1..φ_n; φ_0 = 0, ghost φ_{n+1} = φ_{n−1}
        let mut sub = vec![0.0; n];
        let mut dia = vec![0.0; n];
        let mut sup = vec![0.0; n];
        for i in 1..=n {
            let tau = drift(i as f64 * h);
            let lo = 1.0 / (h * h) + tau / (2.0 * h);
            let hi = 1.0 / (h * h) - tau / (2.0 * h);
            dia[i - 1] = 2.0 / (h * h);
            if i == n {
                sub[i - 1] = -(lo + hi);
            } else {
                sub[i - 1] = -lo;
                sup[i - 1] = -hi;
            }
        }
        // smallest eigenvalue of the (nonsymmetric) tridiagonal matrix by
        // symmetrizing: products sub[i]·sup[i−1] are positive
        let mut off2 = vec![0.0; n - 1];
        for i in 1..n {
            off2[i - 1] = sub[i] * sup[i - 1];
        }
        let count = |s: f64| {
            let mut c = 0;
            let mut d = dia[0] - s;
            if d < 0.0 {
                c += 1;
            }
            for i in 1..n {
                d = dia[i] - s - off2[i - 1] / d;
                if d < 0.0 {
                    c += 1;
                }
            }
            c
        };
        let (mut lo, mut hi) = (0.0, 4.0 / (h * h) + 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if count(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn riemannian_dirichlet_value_from_oracle() {
        // weight cos t on [0, π/4]
        let b = riemannian_dirichlet_bound(2, 1.0, 0.0, PI / 4.0, &cfg()).unwrap();
        let coarse = drift_fd_oracle(|t| t.tan(), PI / 4.0, 20_000);
        let fine = drift_fd_oracle(|t| t.tan(), PI / 4.0, 40_000);
        let oracle = (4.0 * fine - coarse) / 3.0;
        assert!(rel(b.value, oracle) < 1e-7, "{} vs {oracle}", b.value);
        assert!(rel(b.value, 4.569_474_66) < 1e-8, "{}", b.value);
    }

    #[test]
    fn short_interval_limit() {
        for (k, l) in [(1.0, 0.5), (-2.0, -1.0), (3.0, 0.0)] {
            let r = 1e-3;
            let b = riemannian_dirichlet_bound(4, k, l, r, &cfg()).unwrap();
            assert!(rel(b.value * r * r, PI * PI / 4.0) < 1e-2);
        }
    }

    #[test]
    fn m_one_matches_riemannian_surface() {
        for (k1, d) in [(0.3, 1.7), (-0.5, 2.0), (1.0, 1.2)] {
            let k = kahler_neumann_bound(&params(1, k1, 0.7), d, &cfg()).unwrap();
            let r = riemannian_neumann_bound(2, 4.0 * k1, d, &cfg()).unwrap();
            assert!(rel(k.value, r.value) < 1e-10);
        }
    }

    #[test]
    fn lichnerowicz_examples() {
        let r = lichnerowicz_comparison(&params(2, 1.0, 0.0), PI / 2.0, &cfg()).unwrap();
        assert!(r.margin.abs() < 1e-6);
        let r = lichnerowicz_comparison(&params(2, 1.0, 0.0), 1.0, &cfg()).unwrap();
        assert!(r.margin > 0.0);
        let r = lichnerowicz_comparison(&params(1, 1.0, 0.0), PI / 2.0, &cfg()).unwrap();
        assert!(rel(r.bound.value, 8.0) < 1e-8);
        assert_eq!(r.reference_bound, 8.0);
        assert!(lichnerowicz_comparison(&params(2, 0.0, 0.0), 1.0, &cfg()).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = explicit_bound_table(&cfg()).unwrap();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            assert!((r.ratio - 1.0).abs() < 1e-7, "{r:?}");
        }
    }

    #[test]
    fn monotonicity_examples() {
        let s = monotonicity_scan(&params(2, 0.0, 0.0), &[1.0, 2.0, 4.0], &cfg()).unwrap();
        for p in &s.points {
            assert!(rel(p.value, PI * PI / (p.diameter * p.diameter)) < 1e-10);
        }
        assert!(s.strictly_decreasing);
        // π/(2√κ₁) binds before π/√κ₂ here
        let cap = PI / (2.0 * 0.1f64.sqrt());
        let grid: Vec<f64> = (1..=10).map(|i| cap * i as f64 / 10.5).collect();
        let s = monotonicity_scan(&params(2, 0.1, 0.1), &grid, &cfg()).unwrap();
        assert!(s.strictly_decreasing);
        let s = monotonicity_scan(&params(2, 0.1, 0.1), &[1.0], &cfg()).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(monotonicity_scan(&params(2, 0.0, 0.0), &[2.0, 1.0], &cfg()).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn tuple() -> impl Strategy<Value = (u32, f64, f64, f64)> {
            (1u32..5, -1.0f64..1.0, -1.0f64..1.0, 0.05f64..0.95).prop_map(|(m, k1, k2, frac)| {
                let p = params(m, k1, k2);
                let cap = kahler_diameter_caps(&p)
                    .iter()
                    .map(|c| c.1)
                    .fold(4.0, f64::min);
                (m, k1, k2, frac * cap)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn reduction_identity((m, k1, k2, d) in tuple()) {
                let p = params(m, k1, k2);
                let neumann = kahler_neumann_bound(&p, d, &cfg()).unwrap().value;
                let dirichlet = kahler_dirichlet_bound(&p, 0.0, d / 2.0, &cfg()).unwrap().value;
                prop_assert!(rel(dirichlet, neumann) < 1e-8);
            }

            #[test]
            fn scaling_covariance((m, k1, k2, d) in tuple(), ci in 0usize..3) {
                let c = [0.5, 2.0, 10.0][ci];
                let base = kahler_neumann_bound(&params(m, k1, k2), d, &cfg()).unwrap().value;
                let scaled = kahler_neumann_bound(&params(m, k1 / (c * c), k2 / (c * c)), c * d, &cfg())
                    .unwrap()
                    .value;
                prop_assert!(rel(scaled, base / (c * c)) < 1e-9);
            }

            #[test]
            fn bounds_are_positive_and_agree((m, k1, k2, d) in tuple()) {
                let b = kahler_neumann_bound(&params(m, k1, k2), d, &cfg()).unwrap();
                prop_assert!(b.value > 0.0);
                prop_assert!(b.method_agreement < 1e-5);
                prop_assert!(b.validity.iter().all(|v| v.satisfied));
            }
        }
    }
}
