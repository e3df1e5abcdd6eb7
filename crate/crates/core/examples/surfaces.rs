//! The comparison inequality on seeded convex surfaces of revolution.
//! The seed defaults to 1729 and can be given as the first argument.

use kahler_bounds::verification::comparison::{comparison_check, random_convex_profiles, ComparisonOptions, RandomProfileOptions};
use kahler_bounds::verification::suites::DEFAULT_SEED;

fn main() -> kahler_bounds::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let opts = ComparisonOptions::default();
    for p in random_convex_profiles(seed, 5, &RandomProfileOptions::default())? {
        let c = comparison_check(&p, &opts)?;
        println!(
            "{:<40} K_min {:.4}  D <= {:.4}  mu1 {:.5} >= {:.5}  {}",
            c.profile,
            c.k_min,
            c.diameter_used,
            c.spectrum.mu1,
            c.bound,
            if c.passed { "pass" } else { "FAIL" }
        );
        for w in &c.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
