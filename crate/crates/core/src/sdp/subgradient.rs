//! Projected supergradient ascent on `y ↦ min(λ_min(Σ y_i A_i), min_i y_i)`
//! over the unit ball.
//!
//! Uses Polyak steps toward a moving target level `best + δ`; the level gap
//! `δ` shrinks whenever the iterates stop improving.

use super::jacobi::min_eigenvalue;
use super::SdpProblem;

const INITIAL_LEVEL_GAP: f64 = 0.1;
const MIN_LEVEL_GAP: f64 = 1e-9;
const PATIENCE: usize = 20;

pub(super) struct SubgradientOutcome {
    pub y: Vec<f64>,
    pub iterations: usize,
}

pub(super) fn solve(p: &SdpProblem, max_iters: usize) -> SubgradientOutcome {
    let m = p.len();
    let mut y = vec![1.0 / (m as f64).sqrt(); m];
    let mut best_y = y.clone();
    let mut best_z = f64::NEG_INFINITY;
    let mut gap = INITIAL_LEVEL_GAP;
    let mut stall = 0;
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let combined = p.combine(&y);
        let Ok((lambda, u)) = min_eigenvalue(&combined) else {
            break;
        };
        let (argmin, ymin) = y
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("m >= 1");
        let value = lambda.min(ymin);
        if value > best_z {
            best_z = value;
            best_y.clone_from(&y);
            stall = 0;
        } else {
            stall += 1;
            if stall >= PATIENCE {
                gap = (gap * 0.5).max(MIN_LEVEL_GAP);
                stall = 0;
            }
        }

        // supergradient of the active piece
        let mut g = vec![0.0; m];
        if lambda <= ymin {
            for (gi, a) in g.iter_mut().zip(p.dense_matrices()) {
                *gi = quadratic_form(a, &u);
            }
        } else {
            g[argmin] = 1.0;
        }
        let norm2: f64 = g.iter().map(|x| x * x).sum();
        if norm2 == 0.0 {
            break;
        }
        let step = (best_z + gap - value) / norm2;
        for (yi, gi) in y.iter_mut().zip(&g) {
            *yi += step * gi;
        }
        let norm = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1.0 {
            y.iter_mut().for_each(|x| *x /= norm);
        }
    }

    SubgradientOutcome {
        y: best_y,
        iterations,
    }
}

fn quadratic_form(a: &[Vec<f64>], u: &[f64]) -> f64 {
    a.iter()
        .zip(u)
        .map(|(row, ui)| ui * row.iter().zip(u).map(|(x, y)| x * y).sum::<f64>())
        .sum()
}
