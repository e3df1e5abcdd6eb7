//! Thin capsules collapsing to a segment: `μ₁ D̂² / π²` tends to 1, so the
//! flat bound `π²/D²` is approached.

use std::f64::consts::PI;

use kahler_bounds::verification::comparison::{comparison_check, ComparisonOptions};
use kahler_bounds::verification::surface::SurfaceProfile;

fn main() -> kahler_bounds::Result<()> {
    let opts = ComparisonOptions::default();
    for ratio in [0.2, 0.05, 0.02] {
        let c = comparison_check(&SurfaceProfile::capsule(ratio, 1.0)?, &opts)?;
        println!(
            "eps/L = {ratio:<5} mu1 {:.5}  D <= {:.5}  mu1 D^2/pi^2 = {:.5}",
            c.spectrum.mu1,
            c.diameter.value,
            c.spectrum.mu1 * c.diameter.value.powi(2) / (PI * PI)
        );
    }
    Ok(())
}
