use std::f64::consts::PI;

use kahler_bounds::bounds::{kahler_neumann_bound, monotonicity_scan, SolverConfig};
use kahler_bounds::coefficients::CurvatureParams;

fn main() -> kahler_bounds::Result<()> {
    let cfg = SolverConfig::default();

    let params = CurvatureParams::new(2, 0.25, 0.5)?;
    let b = kahler_neumann_bound(&params, 2.0, &cfg)?;
    println!("mu1(m=2, k1=0.25, k2=0.5, D=2) = {:.10}", b.value);
    println!("  shooting {:.12}  fd {:.12}  agreement {:.2e}", b.shooting, b.finite_difference, b.method_agreement);
    for v in &b.validity {
        println!("  {}: {:.6} vs {:.6} ok={}", v.constraint, v.value, v.limit, v.satisfied);
    }

    // at the maximal diameter the weight vanishes at the endpoint
    let sharp = kahler_neumann_bound(&CurvatureParams::new(3, 1.0, 0.0)?, PI / 2.0, &cfg)?;
    println!("k1 = 1 at D = pi/2: {:.10} (limit = {})", sharp.value, sharp.limit);

    match kahler_neumann_bound(&CurvatureParams::new(1, 1.0, 0.0)?, 2.0, &cfg) {
        Err(e) => println!("D = 2 rejected: {e}"),
        Ok(b) => println!("unexpected: {}", b.value),
    }

    let grid: Vec<f64> = (1..=8).map(|i| 0.5 * i as f64).collect();
    let scan = monotonicity_scan(&CurvatureParams::new(2, -0.3, -0.2)?, &grid, &cfg)?;
    for p in &scan.points {
        println!("D = {:.2}  mu1 = {:.8}", p.diameter, p.value);
    }
    println!("strictly decreasing: {}", scan.strictly_decreasing);
    Ok(())
}
