//! Floating-point search for infeasibility certificates.
//!
//! For augmented matrices `A_1..A_m` the certificate problem is
//!
//! ```text
//! maximize z  s.t.  Σ y_i A_i ⪰ z I,  ‖y‖₂ <= 1,  y_i >= z
//! ```
//!
//! Any feasible `(z, y)` with `z > 0` gives weights that the exact verifier
//! can check; the optimum itself is never needed. The objective of a fixed
//! `y` is `min(λ_min(Σ y_i A_i), min_i y_i)`, which is what every returned
//! certificate reports as `z` after re-validation with the Jacobi solver.

mod barrier;
pub mod jacobi;
mod rationalize;
mod subgradient;

use nalgebra::DMatrix;

pub use jacobi::{min_eigenvalue, symmetric_eigen, SymmetricEigen};
pub use rationalize::{best_rational_approximation, rationalize};

use crate::error::{Error, Result};
use crate::system::QuadraticSystem;

/// Symmetric matrices of a common order `n + 1`.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    order: usize,
    matrices: Vec<DMatrix<f64>>,
    dense: Vec<Vec<Vec<f64>>>,
}

impl SdpProblem {
    pub fn new(dense: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let order = dense.first().map_or(0, Vec::len);
        if dense.is_empty() || order == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut matrices = Vec::with_capacity(dense.len());
        for a in &dense {
            if a.len() != order || a.iter().any(|r| r.len() != order) {
                return Err(Error::DimensionMismatch {
                    expected: order,
                    got: a.len(),
                });
            }
            for i in 0..order {
                for j in 0..i {
                    if a[i][j] != a[j][i] {
                        return Err(Error::NotSymmetric);
                    }
                }
            }
            matrices.push(DMatrix::from_fn(order, order, |i, j| a[i][j]));
        }
        Ok(Self {
            order,
            matrices,
            dense,
        })
    }

    pub fn from_system(system: &QuadraticSystem) -> Result<Self> {
        Self::new(system.augmented_f64())
    }

    /// Number of weights `m`.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Matrix order `n + 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    pub fn dense_matrices(&self) -> &[Vec<Vec<f64>>] {
        &self.dense
    }

    /// `Σ y_i A_i`.
    pub fn combine(&self, y: &[f64]) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.order]; self.order];
        for (a, &yi) in self.dense.iter().zip(y) {
            if yi == 0.0 {
                continue;
            }
            for (orow, arow) in out.iter_mut().zip(a) {
                for (o, x) in orow.iter_mut().zip(arow) {
                    *o += yi * x;
                }
            }
        }
        out
    }

    /// Every matrix multiplied by `kappa`.
    pub fn scaled(&self, kappa: f64) -> Self {
        let dense = self
            .dense
            .iter()
            .map(|a| a.iter().map(|r| r.iter().map(|x| x * kappa).collect()).collect())
            .collect();
        Self::new(dense).expect("scaling preserves shape and symmetry")
    }
}

/// `min(λ_min(Σ y_i A_i), min_i y_i)`; `None` if `y` has the wrong length.
pub fn objective(p: &SdpProblem, y: &[f64]) -> Option<f64> {
    if y.len() != p.len() {
        return None;
    }
    let (lambda, _) = min_eigenvalue(&p.combine(y)).ok()?;
    let ymin = y.iter().copied().fold(f64::INFINITY, f64::min);
    Some(lambda.min(ymin))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    /// `z >= z_threshold`.
    Positive,
    /// The solver converged but the optimum is below the threshold.
    Zero,
    /// No positive `z` within the iteration budget, or re-validation failed.
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatCertificate {
    pub z: f64,
    pub y: Vec<f64>,
    pub iterations: usize,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverMethod {
    /// Log-barrier interior-point method.
    #[default]
    Barrier,
    /// Projected supergradient ascent with Polyak level steps.
    Subgradient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub z_threshold: f64,
    pub max_iters: usize,
    pub method: SolverMethod,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            z_threshold: 1e-3,
            max_iters: 5000,
            method: SolverMethod::Barrier,
        }
    }
}

const NORM_SLACK: f64 = 1e-9;
const WEIGHT_SLACK: f64 = 1e-9;
const EIGEN_SLACK: f64 = 1e-6;

/// Checks the three feasibility conditions of `(c.z, c.y)` against the
/// Jacobi eigensolver.
pub fn validate(p: &SdpProblem, c: &FloatCertificate) -> bool {
    if c.y.len() != p.len() || !c.z.is_finite() {
        return false;
    }
    let norm = c.y.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 1.0 + NORM_SLACK {
        return false;
    }
    if c.y.iter().any(|&yi| yi < c.z - WEIGHT_SLACK) {
        return false;
    }
    match min_eigenvalue(&p.combine(&c.y)) {
        Ok((lambda, _)) => lambda >= c.z - EIGEN_SLACK,
        Err(_) => false,
    }
}

/// Searches for a feasible `(z, y)` with `z` as large as the chosen method
/// reaches. The reported `z` is recomputed from `y`, never taken from solver
/// internals, and is never negative since `(0, 0)` is always feasible.
pub fn solve_certificate_sdp(p: &SdpProblem, opts: &SolverOptions) -> FloatCertificate {
    let (y, iterations, converged) = match opts.method {
        SolverMethod::Barrier => {
            let out = barrier::solve(p, opts.max_iters);
            (out.y, out.iterations, out.converged)
        }
        SolverMethod::Subgradient => {
            let out = subgradient::solve(p, opts.max_iters);
            (out.y, out.iterations, false)
        }
    };
    let z = objective(p, &y).unwrap_or(f64::NEG_INFINITY);
    let mut cert = if z > 0.0 {
        FloatCertificate {
            z,
            y,
            iterations,
            status: CertificateStatus::Failed,
        }
    } else {
        FloatCertificate {
            z: 0.0,
            y: vec![0.0; p.len()],
            iterations,
            status: CertificateStatus::Failed,
        }
    };
    cert.status = if !validate(p, &cert) {
        CertificateStatus::Failed
    } else if cert.z >= opts.z_threshold {
        CertificateStatus::Positive
    } else if converged {
        CertificateStatus::Zero
    } else {
        CertificateStatus::Failed
    };
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity2() -> SdpProblem {
        SdpProblem::new(vec![vec![vec![1.0, 0.0], vec![0.0, 1.0]]]).unwrap()
    }

    #[test]
    fn single_identity_reaches_one() {
        for method in [SolverMethod::Barrier, SolverMethod::Subgradient] {
            let opts = SolverOptions {
                method,
                ..SolverOptions::default()
            };
            let c = solve_certificate_sdp(&identity2(), &opts);
            assert_eq!(c.status, CertificateStatus::Positive, "{method:?}");
            assert!(c.z >= 0.99, "{method:?}: z = {}", c.z);
            assert!((c.y[0] - 1.0).abs() < 1e-2);
        }
    }

    #[test]
    fn feasible_system_gives_zero() {
        // x² - 1 <= 0 is feasible; best z is 0
        let p = SdpProblem::new(vec![vec![vec![-1.0, 0.0], vec![0.0, 1.0]]]).unwrap();
        let c = solve_certificate_sdp(&p, &SolverOptions::default());
        assert_eq!(c.z, 0.0);
        assert_ne!(c.status, CertificateStatus::Positive);
        assert!(validate(&p, &c));
    }

    #[test]
    fn validation_rejects_infeasible_points() {
        let p = identity2();
        let c = |z: f64, y: f64| FloatCertificate {
            z,
            y: vec![y],
            iterations: 0,
            status: CertificateStatus::Positive,
        };
        assert!(validate(&p, &c(1.0, 1.0)));
        assert!(!validate(&p, &c(1.0, 1.1)));
        assert!(!validate(&p, &c(0.9, 0.5)));
    }

    #[test]
    fn scaling_scales_eigen_bound() {
        let p = SdpProblem::new(vec![
            vec![vec![1.0, -0.5], vec![-0.5, 1.0]],
            vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        ])
        .unwrap();
        let y = [0.6, 0.8];
        let l1 = min_eigenvalue(&p.combine(&y)).unwrap().0;
        let l2 = min_eigenvalue(&p.scaled(2.0).combine(&y)).unwrap().0;
        assert!((l2 - 2.0 * l1).abs() < 1e-12);
    }

    #[test]
    fn more_iterations_never_hurt() {
        let p = SdpProblem::new(vec![
            vec![vec![1.0, -0.5], vec![-0.5, 0.2]],
            vec![vec![0.3, 0.0], vec![0.0, 1.0]],
        ])
        .unwrap();
        for method in [SolverMethod::Barrier, SolverMethod::Subgradient] {
            let mut last = f64::NEG_INFINITY;
            for iters in [1, 2, 5, 10, 40, 200] {
                let opts = SolverOptions {
                    max_iters: iters,
                    method,
                    ..SolverOptions::default()
                };
                let z = solve_certificate_sdp(&p, &opts).z;
                assert!(z >= last, "{method:?}: {iters} iterations gave {z} < {last}");
                last = z;
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SdpProblem::new(vec![]).is_err());
        assert!(SdpProblem::new(vec![vec![vec![0.0, 1.0], vec![2.0, 0.0]]]).is_err());
        assert!(SdpProblem::new(vec![vec![vec![1.0]], vec![vec![1.0, 0.0], vec![0.0, 1.0]]]).is_err());
    }
}
