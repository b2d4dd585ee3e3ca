//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const RELATIVE_OFF_TOLERANCE: f64 = 1e-12;
/// Largest matrix order accepted.
pub const MAX_ORDER: usize = 64;

/// Eigenvalues (ascending) and matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

fn check_symmetric(a: &[Vec<f64>]) -> Result<f64> {
    let n = a.len();
    if n > MAX_ORDER {
        return Err(Error::DimensionMismatch {
            expected: MAX_ORDER,
            got: n,
        });
    }
    let mut frob = 0.0;
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        frob += row.iter().map(|x| x * x).sum::<f64>();
    }
    let frob = frob.sqrt();
    let tol = 1e-12 * frob.max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (a[i][j] - a[j][i]).abs() > tol || !a[i][j].is_finite() {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(frob)
}

/// Full eigendecomposition by cyclic row-wise Jacobi sweeps, stopping once
/// the off-diagonal Frobenius norm falls below `1e-12 · ‖A‖_F`.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> Result<SymmetricEigen> {
    let frob = check_symmetric(a)?;
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    // symmetrize exactly so rotations see one value per pair
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = avg;
            m[j][i] = avg;
        }
    }
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let threshold = RELATIVE_OFF_TOLERANCE * frob;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| m[k][k]).collect(),
        vectors: order
            .iter()
            .map(|&k| v.iter().map(|row| row[k]).collect())
            .collect(),
    })
}

/// Smallest eigenvalue and a unit eigenvector.
pub fn min_eigenvalue(a: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    if a.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let eig = symmetric_eigen(a)?;
    Ok((eig.values[0], eig.vectors[0].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rayleigh_residual(a: &[Vec<f64>], lambda: f64, u: &[f64]) -> f64 {
        a.iter()
            .zip(u)
            .map(|(row, ui)| {
                let au: f64 = row.iter().zip(u).map(|(x, y)| x * y).sum();
                (au - lambda * ui).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn identity() {
        let a = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_eq!(min_eigenvalue(&a).unwrap().0, 1.0);
    }

    #[test]
    fn diagonal() {
        let a = vec![vec![2.0, 0.0, 0.0], vec![0.0, -5.0, 0.0], vec![0.0, 0.0, 7.0]];
        let (l, u) = min_eigenvalue(&a).unwrap();
        assert_eq!(l, -5.0);
        assert_eq!(u[1].abs(), 1.0);
    }

    #[test]
    fn swap_matrix() {
        let a = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let (l, u) = min_eigenvalue(&a).unwrap();
        assert!((l + 1.0).abs() < 1e-14);
        assert!(rayleigh_residual(&a, l, &u) < 1e-14);
    }

    #[test]
    fn dense_residuals() {
        // Hilbert-like matrix with known positive spectrum
        let n = 8;
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| 1.0 / (i + j + 1) as f64).collect())
            .collect();
        let eig = symmetric_eigen(&a).unwrap();
        let trace: f64 = (0..n).map(|i| a[i][i]).sum();
        assert!((eig.values.iter().sum::<f64>() - trace).abs() < 1e-12);
        for (l, u) in eig.values.iter().zip(&eig.vectors) {
            assert!(rayleigh_residual(&a, *l, u) < 1e-10);
            let norm: f64 = u.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(eig.values[0] > 0.0);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(min_eigenvalue(&a), Err(Error::NotSymmetric)));
    }
}
