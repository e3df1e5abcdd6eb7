use kahler_bounds::bounds::{kahler_dirichlet_bound, kahler_neumann_bound, SolverConfig};
use kahler_bounds::coefficients::CurvatureParams;

fn main() -> kahler_bounds::Result<()> {
    let cfg = SolverConfig::default();
    let params = CurvatureParams::new(2, 0.1, 0.2)?;
    let r = 0.8;
    for lambda in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let b = kahler_dirichlet_bound(&params, lambda, r, &cfg)?;
        println!("Lambda = {lambda:>5}: lambda1 = {:.10}", b.value);
    }
    let dir = kahler_dirichlet_bound(&params, 0.0, r, &cfg)?.value;
    let neu = kahler_neumann_bound(&params, 2.0 * r, &cfg)?.value;
    println!("Lambda = 0 against the Neumann bound at D = 2R: {dir:.12} vs {neu:.12}");

    if let Err(e) = kahler_dirichlet_bound(&params, 2.0, r, &cfg) {
        println!("Lambda = 2 rejected: {e}");
    }
    Ok(())
}
