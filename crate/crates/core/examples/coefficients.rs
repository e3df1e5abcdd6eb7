//! Comparison functions across curvature signs, including the series
//! branch near `κ t² = 0`.

use kahler_bounds::coefficients::{c_kappa, first_zero, s_kappa, t_kappa, t_kappa_lambda};

fn main() -> kahler_bounds::Result<()> {
    println!("{:>8} {:>6} {:>14} {:>14} {:>14}", "kappa", "t", "s_k", "c_k", "T_k");
    for kappa in [-1.0, -1e-9, 0.0, 1e-9, 1.0] {
        for t in [0.25, 1.0] {
            println!(
                "{kappa:>8.0e} {t:>6} {:>14.10} {:>14.10} {:>14.10}",
                s_kappa(kappa, t),
                c_kappa(kappa, t),
                t_kappa(kappa, t)?
            );
        }
    }
    for (kappa, lambda) in [(1.0, 0.0), (1.0, 1.0), (0.0, 0.5), (-1.0, 2.0), (-1.0, 0.5)] {
        let z = first_zero(kappa, lambda);
        println!("first zero of C_({kappa}, {lambda}) = {z}");
        if z.is_finite() {
            println!("  T just inside: {}", t_kappa_lambda(kappa, lambda, 0.9 * z)?);
        }
    }
    Ok(())
}
