//! Rotationally symmetric surfaces `dr² + f(r)² dθ²` and their Laplace
//! spectrum by Fourier-mode separation.
//!
//! Mode `k` solves `(f v')' − (k²/f) v = −λ f v` on `(0, L)`. The radial
//! grid is cell-centred, so `1/f` is never evaluated at a pole and the end
//! faces carry zero flux: regularity at a pole (`f = 0`) and the Neumann
//! condition at a band edge are the same discrete condition.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tridiag::Pencil;

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// `f(0) = f(L) = 0`: a closed surface with two poles.
    TwoPoles,
    /// `f > 0` at both ends, Neumann boundary circles.
    NeumannBand,
}

/// A warping function `f` with analytic `f'`, `f''` on `[0, L]`.
#[derive(Clone)]
pub struct SurfaceProfile {
    pub name: String,
    pub length: f64,
    pub closure: Closure,
    f: ProfileFn,
    df: ProfileFn,
    d2f: ProfileFn,
}

impl std::fmt::Debug for SurfaceProfile {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("SurfaceProfile")
            .field("name", &self.name)
            .field("length", &self.length)
            .field("closure", &self.closure)
            .finish_non_exhaustive()
    }
}

impl SurfaceProfile {
    pub fn new(
        name: &str,
        length: f64,
        closure: Closure,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let profile = Self {
            name: name.into(),
            length,
            closure,
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Round sphere of radius `a`: `f = a sin(r/a)`, `L = πa`.
    pub fn sphere(a: f64) -> Result<Self> {
        positive("sphere radius", a)?;
        Self::new(
            &format!("sphere(a={a})"),
            PI * a,
            Closure::TwoPoles,
            move |r| a * (r / a).sin(),
            move |r| (r / a).cos(),
            move |r| -(r / a).sin() / a,
        )
    }

    /// Flat cylinder `f ≡ c` of length `L` with Neumann ends.
    pub fn flat_band(c: f64, length: f64) -> Result<Self> {
        positive("band radius", c)?;
        positive("band length", length)?;
        Self::new(
            &format!("flat_band(c={c},L={length})"),
            length,
            Closure::NeumannBand,
            move |_| c,
            |_| 0.0,
            |_| 0.0,
        )
    }

    /// `f = ε sin(πr/L)`: constant curvature `π²/L²` with cone points at
    /// the poles when `επ ≠ L`.
    pub fn thin_spheroid(eps: f64, length: f64) -> Result<Self> {
        positive("spheroid width", eps)?;
        positive("spheroid length", length)?;
        let w = PI / length;
        Self::new(
            &format!("thin_spheroid(eps={eps},L={length})"),
            length,
            Closure::TwoPoles,
            move |r| eps * (w * r).sin(),
            move |r| eps * w * (w * r).cos(),
            move |r| -eps * w * w * (w * r).sin(),
        )
    }

    /// Cylinder of radius `ε` closed by two hemispherical caps, total
    /// meridian length `L ≥ πε`. Gauss curvature is `1/ε²` on the caps and
    /// `0` on the cylinder.
    pub fn capsule(eps: f64, length: f64) -> Result<Self> {
        positive("capsule radius", eps)?;
        if !(length >= PI * eps) {
            return Err(Error::ProfileError(format!(
                "capsule length {length} is shorter than its caps ({})",
                PI * eps
            )));
        }
        let cap = PI * eps / 2.0;
        // distance into the nearest cap, or None on the cylinder
        let into_cap = move |r: f64| -> Option<(f64, f64)> {
            if r < cap {
                Some((r, 1.0))
            } else if r > length - cap {
                Some((length - r, -1.0))
            } else {
                None
            }
        };
        Self::new(
            &format!("capsule(eps={eps},L={length})"),
            length,
            Closure::TwoPoles,
            move |r| into_cap(r).map_or(eps, |(s, _)| eps * (s / eps).sin()),
            move |r| into_cap(r).map_or(0.0, |(s, side)| side * (s / eps).cos()),
            move |r| into_cap(r).map_or(0.0, |(s, _)| -(s / eps).sin() / eps),
        )
    }

    /// `f = a[sin u + b₁ sin³u + b₂ sin³u cos u]`, `u = r/a`, `L = πa`:
    /// a smooth perturbation of the round sphere that keeps both poles
    /// regular (`f'(0) = 1`, `f'(L) = −1`, `f` odd about each pole).
    pub fn perturbed_sphere(a: f64, b1: f64, b2: f64) -> Result<Self> {
        positive("sphere radius", a)?;
        Self::new(
            &format!("perturbed_sphere(a={a},b1={b1},b2={b2})"),
            PI * a,
            Closure::TwoPoles,
            move |r| {
                let (s, c) = (r / a).sin_cos();
                a * (s + b1 * s.powi(3) + b2 * s.powi(3) * c)
            },
            move |r| {
                let (s, c) = (r / a).sin_cos();
                c + 3.0 * b1 * s * s * c + b2 * (3.0 * s * s * c * c - s.powi(4))
            },
            move |r| {
                let (s, c) = (r / a).sin_cos();
                (-s + b1 * (6.0 * s * c * c - 3.0 * s.powi(3))
                    + b2 * (6.0 * s * c.powi(3) - 10.0 * s.powi(3) * c))
                    / a
            },
        )
    }

    pub fn f(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    pub fn df(&self, r: f64) -> f64 {
        (self.df)(r)
    }

    pub fn d2f(&self, r: f64) -> f64 {
        (self.d2f)(r)
    }

    /// Gauss curvature `−f''/f`.
    pub fn gauss_curvature(&self, r: f64) -> f64 {
        -self.d2f(r) / self.f(r)
    }

    /// Minimum Gauss curvature over `samples` cell centres of `(0, L)`.
    pub fn min_curvature(&self, samples: usize) -> f64 {
        let h = self.length / samples as f64;
        (0..samples)
            .map(|i| self.gauss_curvature((i as f64 + 0.5) * h))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_width(&self, samples: usize) -> f64 {
        let h = self.length / samples as f64;
        (0..=samples)
            .map(|i| self.f(i as f64 * h))
            .fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::ProfileError(format!("length must be positive, got {}", self.length)));
        }
        let samples = 2000;
        let h = self.length / samples as f64;
        let scale = self.max_width(samples);
        for i in 1..samples {
            let r = i as f64 * h;
            let v = self.f(r);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::ProfileError(format!(
                    "{}: f is not positive at r = {r} (f = {v})",
                    self.name
                )));
            }
        }
        let (f0, fl) = (self.f(0.0), self.f(self.length));
        match self.closure {
            Closure::TwoPoles => {
                if f0.abs() > 1e-12 * scale || fl.abs() > 1e-12 * scale {
                    return Err(Error::ProfileError(format!(
                        "{}: two-pole closure needs f(0) = f(L) = 0, got {f0}, {fl}",
                        self.name
                    )));
                }
                if !(self.df(0.0) > 0.0 && self.df(self.length) < 0.0) {
                    return Err(Error::ProfileError(format!(
                        "{}: two-pole closure needs f'(0) > 0 and f'(L) < 0",
                        self.name
                    )));
                }
            }
            Closure::NeumannBand => {
                if !(f0 > 0.0 && fl > 0.0) {
                    return Err(Error::ProfileError(format!(
                        "{}: a Neumann band needs f > 0 at both ends",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::ProfileError(format!("{name} must be positive, got {v}")))
    }
}

/// Finite-volume pencil of Fourier mode `k` on `n` radial cells.
pub fn mode_pencil(profile: &SurfaceProfile, k: u32, n: usize) -> Pencil {
    let h = profile.length / n as f64;
    let k2 = f64::from(k * k);
    let centre = |i: usize| (i as f64 + 0.5) * h;
    let face = |i: usize| profile.f(i as f64 * h);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    let mut mass = Vec::with_capacity(n);
    for i in 0..n {
        let fi = profile.f(centre(i));
        let left = if i > 0 { face(i) } else { 0.0 };
        let right = if i + 1 < n { face(i + 1) } else { 0.0 };
        diag.push((left + right) / h + k2 * h / fi);
        if i + 1 < n {
            off.push(-right / h);
        }
        mass.push(fi * h);
    }
    Pencil { diag, off, mass }
}

/// The first `count` eigenvalues of mode `k` on an `n`-cell grid.
pub fn mode_spectrum(profile: &SurfaceProfile, k: u32, count: usize, n: usize) -> Vec<f64> {
    let pencil = mode_pencil(profile, k, n);
    (0..count).map(|i| pencil.eigenvalue(i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeEigen {
    pub k: u32,
    /// Extrapolated relevant eigenvalue: the first nonzero one for `k = 0`,
    /// the first one for `k ≥ 1`.
    pub lambda: f64,
    pub error_estimate: f64,
    /// Observed convergence order from grids `n`, `2n`, `4n`.
    pub observed_order: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceEigen {
    pub mu1: f64,
    pub mode: u32,
    pub error_estimate: f64,
    pub per_mode: Vec<ModeEigen>,
    pub grid_size: usize,
}

fn extrapolated_mode(profile: &SurfaceProfile, k: u32, n: usize) -> ModeEigen {
    let index = usize::from(k == 0);
    let values: Vec<f64> = [n, 2 * n, 4 * n]
        .iter()
        .map(|&m| mode_pencil(profile, k, m).eigenvalue(index))
        .collect();
    let d1 = values[0] - values[1];
    let d2 = values[1] - values[2];
    let order = (d1 / d2).abs().log2();
    let (lambda, error, order) = if d1 * d2 > 0.0 && (0.5..=4.5).contains(&order) {
        let correction = d2 / (2f64.powf(order) - 1.0);
        (values[2] - correction, correction.abs(), order)
    } else {
        (values[2], d2.abs(), f64::NAN)
    };
    ModeEigen {
        k,
        lambda,
        error_estimate: error,
        observed_order: order,
    }
}

/// First nonzero Laplace eigenvalue `μ₁` as the minimum over Fourier
/// modes `0..=modes`, with grid-doubling error estimates.
pub fn surface_eigen(profile: &SurfaceProfile, modes: u32, n: usize) -> Result<SurfaceEigen> {
    profile.validate()?;
    if modes < 1 {
        return Err(Error::InvalidInput("need at least one nonzero mode".into()));
    }
    if n < 64 {
        return Err(Error::InvalidInput(format!("need at least 64 radial cells, got {n}")));
    }
    let per_mode: Vec<ModeEigen> = (0..=modes).map(|k| extrapolated_mode(profile, k, n)).collect();
    let best = per_mode
        .iter()
        .min_by(|a, b| a.lambda.total_cmp(&b.lambda))
        .expect("at least two modes");
    Ok(SurfaceEigen {
        mu1: best.lambda,
        mode: best.k,
        error_estimate: best.error_estimate,
        per_mode: per_mode.clone(),
        grid_size: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn sphere_spectrum() {
        for a in [0.5, 1.0, 2.0] {
            let s = SurfaceProfile::sphere(a).unwrap();
            let e = surface_eigen(&s, 3, 200).unwrap();
            assert!(rel(e.mu1, 2.0 / (a * a)) < 5e-3, "{e:?}");
            // l(l+1)/a² within each mode: mode k starts at l = k
            let k2 = mode_spectrum(&s, 2, 1, 1600)[0];
            assert!(rel(k2, 6.0 / (a * a)) < 2e-2);
            let k0 = mode_spectrum(&s, 0, 3, 1600);
            assert!(k0[0].abs() < 1e-9);
            assert!(rel(k0[2], 6.0 / (a * a)) < 2e-2);
        }
    }

    #[test]
    fn sphere_modes_converge_at_second_order() {
        let s = SurfaceProfile::sphere(1.0).unwrap();
        let e = surface_eigen(&s, 2, 100).unwrap();
        for m in &e.per_mode {
            assert!(m.observed_order > 1.5 && m.observed_order < 2.5, "{m:?}");
        }
    }

    #[test]
    fn flat_band_spectrum() {
        for (c, l) in [(1.0, 2.0), (0.2, 1.0), (0.5, 5.0)] {
            let b = SurfaceProfile::flat_band(c, l).unwrap();
            let e = surface_eigen(&b, 3, 200).unwrap();
            let exact = (PI * PI / (l * l)).min(1.0 / (c * c));
            assert!(rel(e.mu1, exact) < 5e-3, "{c} {l} {e:?}");
        }
    }

    #[test]
    fn capsules_decrease_as_they_elongate() {
        let l = 1.0;
        let values: Vec<f64> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&r| surface_eigen(&SurfaceProfile::capsule(r * l, l).unwrap(), 2, 400).unwrap().mu1)
            .collect();
        assert!(values[0] > values[1] && values[1] > values[2], "{values:?}");
    }

    #[test]
    fn cone_spheroid_axial_spectrum_ignores_width() {
        let l = 2.0;
        let a = mode_spectrum(&SurfaceProfile::thin_spheroid(0.1, l).unwrap(), 0, 2, 800)[1];
        let b = mode_spectrum(&SurfaceProfile::thin_spheroid(0.02, l).unwrap(), 0, 2, 800)[1];
        assert!(rel(a, b) < 1e-12);
        assert!(rel(a, 2.0 * PI * PI / (l * l)) < 1e-3);
    }

    #[test]
    fn perturbed_sphere_derivatives_are_consistent() {
        let p = SurfaceProfile::perturbed_sphere(1.3, 0.04, -0.03).unwrap();
        let h = 1e-5;
        for &r in &[0.2, 1.0, 2.5, 3.9] {
            let fd1 = (p.f(r + h) - p.f(r - h)) / (2.0 * h);
            let fd2 = (p.df(r + h) - p.df(r - h)) / (2.0 * h);
            assert!((fd1 - p.df(r)).abs() < 1e-8);
            assert!((fd2 - p.d2f(r)).abs() < 1e-8);
        }
        assert!((p.df(0.0) - 1.0).abs() < 1e-15);
        assert!((p.df(p.length) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn capsule_curvature() {
        let c = SurfaceProfile::capsule(0.1, 1.0).unwrap();
        assert!(rel(c.gauss_curvature(0.05), 100.0) < 1e-12);
        assert_eq!(c.gauss_curvature(0.5), 0.0);
        assert_eq!(c.min_curvature(1000), 0.0);
    }

    #[test]
    fn invalid_profiles() {
        assert!(matches!(SurfaceProfile::capsule(1.0, 2.0), Err(Error::ProfileError(_))));
        let bad = SurfaceProfile::new("dip", 1.0, Closure::NeumannBand, |r| r - 0.5, |_| 1.0, |_| 0.0);
        assert!(matches!(bad, Err(Error::ProfileError(_))));
        let open = SurfaceProfile::new("open", 1.0, Closure::TwoPoles, |_| 1.0, |_| 0.0, |_| 0.0);
        assert!(matches!(open, Err(Error::ProfileError(_))));
    }
}
