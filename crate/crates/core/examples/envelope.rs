use kahler_bounds::verification::envelope::{envelope_from_eigenfunction, envelope_hypotheses, modulus_envelope_check};
use kahler_bounds::verification::heatflow::{FlowProfile, LinearFlow, Trajectory};
use kahler_bounds::verification::heatflow::oscillation;
use kahler_bounds::weight::ModelWeight;

fn main() -> kahler_bounds::Result<()> {
    let w = ModelWeight::flat();
    let n = 1000;
    let flow = LinearFlow::new(&w, 0.5, n)?;
    let x = flow.grid().to_vec();
    let h = x[1] - x[0];
    let times: Vec<f64> = (0..=60).map(|i| 0.005 * i as f64).collect();

    let data: [(&str, fn(f64) -> f64); 3] = [
        ("sin", |x| (std::f64::consts::PI * x).sin()),
        ("step", |x| (20.0 * x).tanh()),
        ("bump", |x| (-30.0 * (x - 0.2).powi(2)).exp()),
    ];
    for (name, f) in data {
        let u0: Vec<f64> = x.iter().map(|&s| f(s)).collect();
        let u = flow.evolve(&u0, &times);
        let osc = u.iter().map(|v| oscillation(v)).collect();
        let traj = Trajectory { x: x.clone(), times: times.clone(), u, osc };
        let env = envelope_from_eigenfunction(&w, 0.5, flow.first_nonzero(), h, n, &u0)?;
        let check = modulus_envelope_check(&traj, &env, 1e-6);
        let hyp = envelope_hypotheses(&w, &FlowProfile::linear(), &env, &u0);
        println!(
            "{name:<5} C = {:.4}  max violation {:.2e}  holds {}  hypotheses hold {}",
            env.amplitude,
            check.max_violation,
            check.holds,
            hyp.hold(1e-4)
        );
    }
    Ok(())
}
