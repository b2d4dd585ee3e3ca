//! Log-barrier interior-point method for
//!
//! ```text
//! maximize z  s.t.  Σ y_i A_i - z I ≻ 0,  y_i - z > 0,  1 - ‖y‖² > 0
//! ```
//!
//! Damped Newton steps on `t·z + log det(S) + Σ log(y_i - z) + log(1 - ‖y‖²)`
//! with `t` increased geometrically after each centering stage.

use nalgebra::{DMatrix, DVector};

use super::{objective, SdpProblem};

const T_INITIAL: f64 = 1.0;
const T_GROWTH: f64 = 8.0;
const GAP_TOLERANCE: f64 = 1e-9;
const CENTERING_TOLERANCE: f64 = 1e-9;
const ARMIJO: f64 = 0.25;
const MAX_HALVINGS: usize = 60;

pub(super) struct BarrierOutcome {
    pub y: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

struct Point {
    y: DVector<f64>,
    z: f64,
}

fn slack_matrix(p: &SdpProblem, pt: &Point) -> DMatrix<f64> {
    let mut s = DMatrix::<f64>::identity(p.order(), p.order()) * (-pt.z);
    for (a, yi) in p.matrices().iter().zip(pt.y.iter()) {
        s += a * *yi;
    }
    s
}

/// Barrier value, or `None` outside the strict interior.
fn barrier_value(p: &SdpProblem, pt: &Point, t: f64) -> Option<f64> {
    let ball = 1.0 - pt.y.norm_squared();
    if ball <= 0.0 {
        return None;
    }
    let mut value = t * pt.z + ball.ln();
    for yi in pt.y.iter() {
        let s = yi - pt.z;
        if s <= 0.0 {
            return None;
        }
        value += s.ln();
    }
    let chol = slack_matrix(p, pt).cholesky()?;
    let log_det: f64 = chol.l_dirty().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
    if !log_det.is_finite() {
        return None;
    }
    Some(value + log_det)
}

/// Gradient and (negative definite) Hessian of the barrier in `(y, z)`.
fn derivatives(p: &SdpProblem, pt: &Point, t: f64) -> Option<(DVector<f64>, DMatrix<f64>)> {
    let m = p.len();
    let dim = m + 1;
    let s_inv = slack_matrix(p, pt).cholesky()?.inverse();
    // B_a = S⁻¹ A_a, with A_z = -I
    let mut b: Vec<DMatrix<f64>> = p.matrices().iter().map(|a| &s_inv * a).collect();
    b.push(-s_inv.clone());

    let mut grad = DVector::<f64>::zeros(dim);
    let mut hess = DMatrix::<f64>::zeros(dim, dim);
    for a in 0..dim {
        grad[a] = b[a].trace();
        for c in a..dim {
            // tr(B_a B_c)
            let tr = b[a].component_mul(&b[c].transpose()).sum();
            hess[(a, c)] = -tr;
            hess[(c, a)] = -tr;
        }
    }
    grad[m] += t;
    for i in 0..m {
        let s = pt.y[i] - pt.z;
        let inv = 1.0 / s;
        let inv2 = inv * inv;
        grad[i] += inv;
        grad[m] -= inv;
        hess[(i, i)] -= inv2;
        hess[(i, m)] += inv2;
        hess[(m, i)] += inv2;
        hess[(m, m)] -= inv2;
    }
    let ball = 1.0 - pt.y.norm_squared();
    for i in 0..m {
        grad[i] -= 2.0 * pt.y[i] / ball;
        hess[(i, i)] -= 2.0 / ball;
        for j in 0..m {
            hess[(i, j)] -= 4.0 * pt.y[i] * pt.y[j] / (ball * ball);
        }
    }
    Some((grad, hess))
}

/// Runs at most `max_iters` Newton steps. Every iterate is scored by the
/// exact objective `min(λ_min(Σ y_i A_i), min y_i)` and the best is kept.
pub(super) fn solve(p: &SdpProblem, max_iters: usize) -> BarrierOutcome {
    let m = p.len();
    let start = 0.5 / (m as f64).sqrt();
    let y0 = vec![start; m];
    let mut pt = Point {
        y: DVector::from_vec(y0.clone()),
        z: objective(p, &y0).unwrap_or(0.0).min(start) - 1.0,
    };
    let mut best_y = y0.clone();
    let mut best_z = objective(p, &y0).unwrap_or(f64::NEG_INFINITY);
    let barrier_terms = (p.order() + m + 1) as f64;

    let mut t = T_INITIAL;
    let mut iterations = 0;
    let mut converged = false;
    'outer: while iterations < max_iters {
        loop {
            if iterations >= max_iters {
                break 'outer;
            }
            let Some((grad, hess)) = derivatives(p, &pt, t) else {
                break 'outer;
            };
            let neg_h = -hess;
            let Some(step) = neg_h.clone().cholesky().map(|c| c.solve(&grad)) else {
                break 'outer;
            };
            let decrement = grad.dot(&step);
            if decrement / 2.0 <= CENTERING_TOLERANCE {
                break;
            }
            let Some(current) = barrier_value(p, &pt, t) else {
                break 'outer;
            };
            let mut alpha = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let trial = Point {
                    y: &pt.y + &step.rows(0, m) * alpha,
                    z: pt.z + alpha * step[m],
                };
                if let Some(v) = barrier_value(p, &trial, t) {
                    if v > current && v >= current + ARMIJO * alpha * decrement {
                        accepted = Some(trial);
                        break;
                    }
                }
                alpha *= 0.5;
            }
            iterations += 1;
            let Some(next) = accepted else {
                // rounding floor reached
                break 'outer;
            };
            pt = next;
            let y: Vec<f64> = pt.y.iter().copied().collect();
            if let Some(g) = objective(p, &y) {
                if g > best_z {
                    best_z = g;
                    best_y = y;
                }
            }
        }
        if barrier_terms / t < GAP_TOLERANCE {
            converged = true;
            break;
        }
        t *= T_GROWTH;
    }

    BarrierOutcome {
        y: best_y,
        iterations,
        converged,
    }
}
