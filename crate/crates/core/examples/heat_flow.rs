//! Oscillation decay of the linear and graphical mean curvature flows.
//! Pass `--csv` to print the oscillation history instead.

use std::f64::consts::PI;

use kahler_bounds::coefficients::CurvatureParams;
use kahler_bounds::verification::heatflow::{heatflow_1d, FlowProfile, HeatFlowConfig};
use kahler_bounds::weight::ModelWeight;

fn main() -> kahler_bounds::Result<()> {
    let csv = std::env::args().any(|a| a == "--csv");
    let u0 = |x: f64| (3.0 * x).tanh() + 0.3 * (2.0 * x).cos();

    let w = ModelWeight::kahler(&CurvatureParams::new(2, 0.0, 1.0)?);
    let cfg = HeatFlowConfig::new(400, 5.0);
    let linear = heatflow_1d(&w, &FlowProfile::linear(), PI / 2.0, &u0, &cfg, None)?;
    if csv {
        print!("{}", linear.trajectory.oscillation_csv());
        return Ok(());
    }
    let f = linear.fit;
    println!(
        "linear, k2 = 1, D = pi: fitted {:.6} target {:.6} rel err {:.2e}",
        f.fitted_rate,
        f.target_rate,
        f.relative_error()
    );

    let cfg = HeatFlowConfig::new(300, 0.6);
    let mcf = heatflow_1d(&ModelWeight::flat(), &FlowProfile::graphical_mcf(), 0.5, &|x| 4.0 * u0(2.0 * x), &cfg, Some(PI * PI))?;
    let osc = &mcf.trajectory.osc;
    println!(
        "graphical MCF, flat D = 1: osc {:.4} -> {:.4e}, monotone {}",
        osc[0],
        osc[osc.len() - 1],
        mcf.trajectory.oscillation_non_increasing(1e-12)
    );
    Ok(())
}
