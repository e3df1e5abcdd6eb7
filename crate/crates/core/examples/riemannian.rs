use std::f64::consts::PI;

use kahler_bounds::bounds::{riemannian_dirichlet_bound, riemannian_neumann_bound, SolverConfig};

fn main() -> kahler_bounds::Result<()> {
    let cfg = SolverConfig::default();
    for n in [2, 3, 5] {
        let round = riemannian_neumann_bound(n, 1.0, PI, &cfg)?;
        let flat = riemannian_neumann_bound(n, 0.0, 1.0, &cfg)?;
        let hyp = riemannian_neumann_bound(n, -1.0, 2.0, &cfg)?;
        println!(
            "n = {n}: round sphere {:.8}  flat D=1 {:.8}  k=-1 D=2 {:.8}",
            round.value, flat.value, hyp.value
        );
    }
    let b = riemannian_dirichlet_bound(3, 0.0, 0.0, 1.0, &cfg)?;
    println!("Dirichlet n=3 k=0 Lambda=0 R=1: {:.10} (pi^2/4 = {:.10})", b.value, PI * PI / 4.0);
    Ok(())
}
