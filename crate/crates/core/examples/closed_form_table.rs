use kahler_bounds::bounds::{explicit_bound_table, lichnerowicz_comparison, SolverConfig};
use kahler_bounds::coefficients::CurvatureParams;

fn main() -> kahler_bounds::Result<()> {
    let cfg = SolverConfig::default();
    println!("{:<12} {:>2} {:>16} {:>10} {:>20}", "family", "m", "computed", "expected", "ratio");
    for row in explicit_bound_table(&cfg)? {
        println!(
            "{:<12} {:>2} {:>16.12} {:>10} {:>20.16}",
            row.family, row.m, row.computed, row.expected, row.ratio
        );
    }

    let params = CurvatureParams::new(2, 1.0, 0.0)?;
    println!("\nmargin over 8 k1 for m = 2, k1 = 1");
    for d in [0.5, 0.8, 1.1, 1.4, 1.55] {
        let r = lichnerowicz_comparison(&params, d, &cfg)?;
        println!("D = {d:<5} bound {:.8}  margin {:.8}", r.bound.value, r.margin);
    }
    Ok(())
}
