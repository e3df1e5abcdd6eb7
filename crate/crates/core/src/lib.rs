//! First-eigenvalue lower bounds from one-dimensional model problems.
//!
//! A compact Kähler manifold of complex dimension `m` with holomorphic
//! sectional curvature `H ≥ 4κ₁`, orthogonal Ricci curvature
//! `Ric⊥ ≥ 2(m−1)κ₂` and diameter `D` has first nonzero Neumann eigenvalue
//! at least [`bounds::kahler_neumann_bound`]. The Dirichlet and Riemannian
//! analogues live next to it. Bounds are computed by a shooting solver and
//! cross-checked against a finite-difference solver.
//!
//! [`verification`] holds numerical checks of the surrounding geometry and
//! [`cli`] the command-line front end.

pub mod bounds;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod ode;
pub mod sturm_liouville;
pub mod tridiag;
pub mod verification;
pub mod weight;

pub use error::{Error, Result};
