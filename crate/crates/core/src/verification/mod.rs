//! Numerical checks of the dynamic and geometric statements behind the
//! bounds: oscillation decay of quasilinear flows, modulus-of-continuity
//! envelopes, and the comparison inequality on surfaces of revolution.

pub mod comparison;
pub mod diameter;
pub mod envelope;
pub mod heatflow;
pub mod suites;
pub mod surface;
