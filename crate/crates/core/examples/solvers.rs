//! The eigenvalue solvers on a user-supplied weight, with a Rayleigh
//! quotient upper bound from a trial function.

use std::f64::consts::PI;

use kahler_bounds::sturm_liouville::{rayleigh_quotient, solve_fd, solve_shooting, SampledFunction, SlProblem};
use kahler_bounds::weight::FnWeight;

fn main() -> kahler_bounds::Result<()> {
    let w = FnWeight::new(|t: f64| 1.0 + 0.5 * t * t, |t: f64| t).even();
    let problem = SlProblem::mixed(w, 1.0);

    let shoot = solve_shooting(&problem, 1e-12)?;
    let fd = solve_fd(&problem, 2000)?;
    println!("shooting          {:.12} (residual {:.1e})", shoot.lambda, shoot.residual);
    println!("finite difference {:.12} (error est {:.1e})", fd.lambda, fd.residual);
    println!("eigenfunction monotone: {}", shoot.is_monotone_increasing(1e-10));

    let trial = SampledFunction::uniform(1.0, 400, |t| (PI * t / 2.0).sin())
        .with_derivative(|t| PI / 2.0 * (PI * t / 2.0).cos());
    let rq = rayleigh_quotient(&problem, &trial)?;
    println!("Rayleigh quotient of sin(pi t/2): {rq:.12} >= {:.12}", shoot.lambda);
    Ok(())
}
