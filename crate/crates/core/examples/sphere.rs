use std::f64::consts::PI;

use kahler_bounds::bounds::{kahler_neumann_bound, SolverConfig};
use kahler_bounds::coefficients::CurvatureParams;
use kahler_bounds::verification::diameter::surface_diameter_upper;
use kahler_bounds::verification::surface::{surface_eigen, SurfaceProfile};

fn main() -> kahler_bounds::Result<()> {
    for a in [0.5, 1.0, 2.0] {
        let s = SurfaceProfile::sphere(a)?;
        let e = surface_eigen(&s, 3, 400)?;
        let d = surface_diameter_upper(&s, 96, 0);
        let bound = kahler_neumann_bound(&CurvatureParams::new(1, 1.0 / (4.0 * a * a), 0.0)?, PI * a, &SolverConfig::default())?;
        println!(
            "a = {a}: mu1 = {:.6} (2/a^2 = {:.6}, mode k = {})  bound {:.6}  diameter <= {:.5} (pi a = {:.5})",
            e.mu1,
            2.0 / (a * a),
            e.mode,
            bound.value,
            d.value,
            PI * a
        );
    }
    Ok(())
}
