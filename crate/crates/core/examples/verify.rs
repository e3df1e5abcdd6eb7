use kahler_bounds::bounds::SolverConfig;
use kahler_bounds::verification::suites::{run_suite, Suite, DEFAULT_SEED};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "lemma32".into());
    let suite: Suite = match name.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}; choose one of {:?}", Suite::NAMES);
            std::process::exit(64);
        }
    };
    let report = run_suite(suite, DEFAULT_SEED, &SolverConfig::default());
    for c in &report.checks {
        println!("{:<20} {:<28} {} margin {:.3e}", c.suite, c.check, if c.passed { "pass" } else { "FAIL" }, c.margin);
    }
    println!("{} passed, {} failed", report.passed, report.failed);
}
