//! Symmetric tridiagonal generalized eigenproblems `K x = λ M x` with a
//! positive diagonal mass matrix `M`.
//!
//! Eigenvalues are isolated by Sturm-sequence bisection: by Sylvester's law
//! of inertia the number of negative pivots in the `LDLᵀ` factorization of
//! `K − σM` equals the number of eigenvalues below `σ`.

const PIVOT_GUARD: f64 = 1e-300;

#[derive(Debug, Clone)]
pub struct Pencil {
    /// Diagonal of `K`.
    pub diag: Vec<f64>,
    /// Off-diagonal of `K` (length `n − 1`).
    pub off: Vec<f64>,
    /// Diagonal of `M`.
    pub mass: Vec<f64>,
}

impl Pencil {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut prev = 1.0;
        for i in 0..self.len() {
            let mut d = self.diag[i] - sigma * self.mass[i];
            if i > 0 {
                d -= self.off[i - 1] * self.off[i - 1] / prev;
            }
            if d.abs() < PIVOT_GUARD {
                d = -PIVOT_GUARD;
            }
            if d < 0.0 {
                count += 1;
            }
            prev = d;
        }
        count
    }

    /// Gershgorin bound on the spectrum of `M⁻¹K` from above.
    pub fn upper_bound(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].abs();
                if i > 0 {
                    r += self.off[i - 1].abs();
                }
                if i + 1 < n {
                    r += self.off[i].abs();
                }
                r / self.mass[i]
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin bound on the spectrum of `M⁻¹K` from below.
    pub fn lower_bound(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i];
                if i > 0 {
                    r -= self.off[i - 1].abs();
                }
                if i + 1 < n {
                    r -= self.off[i].abs();
                }
                r / self.mass[i]
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        assert!(index < self.len(), "eigenvalue index out of range");
        let mut lo = self.lower_bound().min(0.0) - 1.0;
        let mut hi = self.upper_bound() + 1.0;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for a converged eigenvalue by shifted inverse iteration,
    /// normalized to unit max-norm with a positive last component.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.len();
        let shift = eigenvalue - 1e-10 * eigenvalue.abs().max(1e-12);
        let lower: Vec<f64> = self.off.clone();
        let upper: Vec<f64> = self.off.clone();
        let diag: Vec<f64> = (0..n)
            .map(|i| self.diag[i] - shift * self.mass[i])
            .collect();
        let mut x = vec![1.0; n];
        for _ in 0..4 {
            let rhs: Vec<f64> = x.iter().zip(&self.mass).map(|(a, m)| a * m).collect();
            x = solve_tridiagonal(&lower, &diag, &upper, &rhs);
            let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
            if scale > 0.0 && scale.is_finite() {
                x.iter_mut().for_each(|v| *v /= scale);
            }
        }
        if x[n - 1] < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        x
    }
}

/// Solves a tridiagonal system by elimination without pivoting; zero pivots
/// are nudged to a tiny value.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let guard = |v: f64| if v.abs() < PIVOT_GUARD { PIVOT_GUARD } else { v };
    let mut pivot = guard(diag[0]);
    if n > 1 {
        c[0] = upper[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = guard(diag[i] - lower[i - 1] * c[i - 1]);
        if i + 1 < n {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n.saturating_sub(1)).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dirichlet_laplacian(n: usize) -> Pencil {
        let h = 1.0 / (n + 1) as f64;
        Pencil {
            diag: vec![2.0 / h; n],
            off: vec![-1.0 / h; n - 1],
            mass: vec![h; n],
        }
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let p = dirichlet_laplacian(n);
        let h = 1.0 / (n + 1) as f64;
        for k in 0..5 {
            let exact = 4.0 / (h * h) * ((k + 1) as f64 * PI * h / 2.0).sin().powi(2);
            assert!((p.eigenvalue(k) - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn eigenvector_is_discrete_sine() {
        let n = 40;
        let p = dirichlet_laplacian(n);
        let lam = p.eigenvalue(0);
        let v = p.eigenvector(lam);
        let h = 1.0 / (n + 1) as f64;
        let peak = (0..n).map(|i| (PI * (i + 1) as f64 * h).sin()).fold(0.0, f64::max);
        for (i, vi) in v.iter().enumerate() {
            let exact = (PI * (i + 1) as f64 * h).sin() / peak;
            assert!((vi - exact).abs() < 1e-8);
        }
    }

    #[test]
    fn thomas_solves_diagonally_dominant_system() {
        let lower = [1.0, -0.5, 0.25];
        let diag = [4.0, 5.0, 6.0, 3.0];
        let upper = [0.5, 1.0, -1.0];
        let x = [1.0, -2.0, 0.5, 3.0];
        let rhs: Vec<f64> = (0..4)
            .map(|i| {
                let mut r = diag[i] * x[i];
                if i > 0 {
                    r += lower[i - 1] * x[i - 1];
                }
                if i < 3 {
                    r += upper[i] * x[i + 1];
                }
                r
            })
            .collect();
        let sol = solve_tridiagonal(&lower, &diag, &upper, &rhs);
        for i in 0..4 {
            assert!((sol[i] - x[i]).abs() < 1e-14);
        }
    }
}
