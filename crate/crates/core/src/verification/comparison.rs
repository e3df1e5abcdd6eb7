//! Surface-level test of the comparison inequality `μ₁ ≥ μ̄₁(1, K_min/4, ·, D̂)`.
//!
//! For complex dimension one the holomorphic sectional curvature is the
//! Gauss curvature, so `H ≥ 4κ₁` reads `K ≥ 4κ₁`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{kahler_neumann_bound, SolverConfig};
use crate::coefficients::CurvatureParams;
use crate::error::Result;
use crate::verification::diameter::{surface_diameter_upper, DiameterEstimate};
use crate::verification::surface::{surface_eigen, SurfaceEigen, SurfaceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonOptions {
    pub modes: u32,
    pub radial_cells: usize,
    pub start_rows: usize,
    pub max_refinements: usize,
    /// Cell centres used for the curvature minimum.
    pub curvature_samples: usize,
    pub solver: SolverConfig,
}

impl Default for ComparisonOptions {
    fn default() -> Self {
        Self {
            modes: 4,
            radial_cells: 400,
            start_rows: 48,
            max_refinements: 1,
            curvature_samples: 4000,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonCheck {
    pub profile: String,
    pub spectrum: SurfaceEigen,
    pub diameter: DiameterEstimate,
    pub k_min: f64,
    pub kappa1: f64,
    /// Diameter passed to the bound (after the maximal-diameter clamp).
    pub diameter_used: f64,
    pub clamped: bool,
    pub bound: f64,
    pub margin: f64,
    pub slack: f64,
    pub passed: bool,
    pub warnings: Vec<String>,
}

impl ComparisonCheck {
    /// `μ₁ D̂² / π²`.
    pub fn flat_ratio(&self) -> f64 {
        self.spectrum.mu1 * self.diameter.value.powi(2) / (PI * PI)
    }
}

pub fn comparison_check(profile: &SurfaceProfile, options: &ComparisonOptions) -> Result<ComparisonCheck> {
    let spectrum = surface_eigen(profile, options.modes, options.radial_cells)?;
    let diameter = surface_diameter_upper(profile, options.start_rows, options.max_refinements);
    comparison_from_parts(profile, spectrum, diameter, options)
}

/// Assembles a check from an already computed spectrum and diameter bound.
pub fn comparison_from_parts(
    profile: &SurfaceProfile,
    spectrum: SurfaceEigen,
    diameter: DiameterEstimate,
    options: &ComparisonOptions,
) -> Result<ComparisonCheck> {
    let k_min = profile.min_curvature(options.curvature_samples);
    let kappa1 = k_min / 4.0;
    let mut warnings = Vec::new();
    let mut diameter_used = diameter.value;
    let mut clamped = false;
    if k_min > 0.0 {
        let cap = PI / k_min.sqrt();
        if diameter_used > cap {
            warnings.push(format!(
                "diameter bound {diameter_used} exceeds the maximal diameter {cap} for K >= {k_min}; clamped"
            ));
            diameter_used = cap;
            clamped = true;
        }
    }
    let params = CurvatureParams::new(1, kappa1, 0.0)?;
    let bound = kahler_neumann_bound(&params, diameter_used, &options.solver)?;
    let margin = spectrum.mu1 - bound.value;
    let slack = 1e-9
        + spectrum.error_estimate
        + bound.fd_error_estimate
        + (bound.shooting - bound.finite_difference).abs();
    Ok(ComparisonCheck {
        profile: profile.name.clone(),
        passed: margin >= -slack,
        spectrum,
        diameter,
        k_min,
        kappa1,
        diameter_used,
        clamped,
        bound: bound.value,
        margin,
        slack,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomProfileOptions {
    pub radius_range: (f64, f64),
    pub coefficient_bound: f64,
    /// Minimum of `K a²` for an accepted profile.
    pub curvature_floor: f64,
}

impl Default for RandomProfileOptions {
    fn default() -> Self {
        Self {
            radius_range: (0.6, 1.6),
            coefficient_bound: 0.06,
            curvature_floor: 0.05,
        }
    }
}

/// `count` perturbed spheres from a seeded generator, rejecting any whose
/// minimum curvature falls below the floor.
pub fn random_convex_profiles(
    seed: u64,
    count: usize,
    options: &RandomProfileOptions,
) -> Result<Vec<SurfaceProfile>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(crate::Error::ProfileError(
                "random profile generator rejected too many samples".into(),
            ));
        }
        let a = rng.gen_range(options.radius_range.0..options.radius_range.1);
        let b1 = rng.gen_range(-options.coefficient_bound..options.coefficient_bound);
        let b2 = rng.gen_range(-options.coefficient_bound..options.coefficient_bound);
        let Ok(profile) = SurfaceProfile::perturbed_sphere(a, b1, b2) else {
            continue;
        };
        if profile.min_curvature(2000) * a * a > options.curvature_floor {
            out.push(profile);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_sharp() {
        let s = SurfaceProfile::sphere(1.0).unwrap();
        let c = comparison_check(&s, &ComparisonOptions::default()).unwrap();
        assert!(c.clamped);
        assert!((c.bound - 2.0).abs() < 1e-8);
        assert!((c.spectrum.mu1 - 2.0).abs() / 2.0 < 5e-3);
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn random_profiles_are_deterministic_and_convex() {
        let opts = RandomProfileOptions::default();
        let a = random_convex_profiles(7, 4, &opts).unwrap();
        let b = random_convex_profiles(7, 4, &opts).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.name, q.name);
            assert!(p.min_curvature(500) > 0.0);
        }
    }

    #[test]
    fn capsule_passes_flat_bound() {
        let c = SurfaceProfile::capsule(0.1, 1.0).unwrap();
        let r = comparison_check(&c, &ComparisonOptions::default()).unwrap();
        assert_eq!(r.kappa1, 0.0);
        assert!(r.passed && r.margin > 0.0, "{r:?}");
        assert!(r.flat_ratio() > 1.0);
    }
}
