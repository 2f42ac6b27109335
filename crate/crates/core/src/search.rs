//! Ascent and descent of the Nijenhuis norm over `Z`.
//!
//! Iterates are `J = Q J_ref Qᵀ` with `Q ∈ SO(6)` moved by `exp(K)` for a
//! skew `K`. The objective is the squared tensor norm computed directly
//! from the brackets; the closed form is never consulted.

use crate::acs::{random_acs_with, seeded_rng, validate, Acs};
use crate::nijenhuis::nijenhuis_norm;
use nalgebra::Matrix6;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Finite-difference step on each skew coordinate.
pub const FD_STEP: f64 = 1e-6;
pub const INITIAL_STEP: f64 = 0.1;
pub const MAX_STEP: f64 = 0.5;
pub const STEP_TOL: f64 = 1e-10;
pub const GRADIENT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITERS: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Maximize => 1.0,
            Direction::Minimize => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    /// `‖N‖` at `best_acs`.
    pub best_value: f64,
    pub best_acs: Acs,
    /// Iterations summed over restarts.
    pub iterations: usize,
    pub restarts: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("no restart converged; best value {:.6e}", .0.best_value)]
    NoConvergence(Box<SearchReport>),
    #[error("at least one restart is required")]
    NoRestarts,
}

/// One restart's result.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub value: f64,
    pub acs: Acs,
    pub iterations: usize,
    pub converged: bool,
}

/// Skew generator `K` from its 15 upper-triangular entries.
fn skew(params: &[f64; 15]) -> Matrix6<f64> {
    let mut k = Matrix6::zeros();
    let mut n = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            k[(i, j)] = params[n];
            k[(j, i)] = -params[n];
            n += 1;
        }
    }
    k
}

fn unit_skew(index: usize, scale: f64) -> Matrix6<f64> {
    let mut p = [0.0; 15];
    p[index] = scale;
    skew(&p)
}

fn objective(q: &Matrix6<f64>, j_ref: &Matrix6<f64>) -> f64 {
    let acs = Acs::from_matrix_unchecked(q * j_ref * q.transpose());
    let n = nijenhuis_norm(&acs);
    n * n
}

fn reorthonormalize(q: &Matrix6<f64>) -> Matrix6<f64> {
    let qr = q.qr();
    let (mut out, r) = (qr.q(), qr.r());
    for k in 0..6 {
        if r[(k, k)] < 0.0 {
            out.column_mut(k).neg_mut();
        }
    }
    out
}

/// Runs a single ascent (or descent) from `start`. `observe` sees the start
/// and every accepted iterate with its objective `‖N‖²`.
pub fn search_from(
    start: &Acs,
    direction: Direction,
    max_iters: usize,
    mut observe: impl FnMut(&Acs, f64),
) -> RestartOutcome {
    let j_ref = *start.matrix();
    let sign = direction.sign();
    let mut q = Matrix6::identity();
    let mut value = objective(&q, &j_ref);
    observe(start, value);
    let mut step = INITIAL_STEP;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let mut grad = [0.0; 15];
        for (k, g) in grad.iter_mut().enumerate() {
            let plus = unit_skew(k, FD_STEP).exp() * q;
            let minus = unit_skew(k, -FD_STEP).exp() * q;
            *g = (objective(&plus, &j_ref) - objective(&minus, &j_ref)) / (2.0 * FD_STEP);
        }
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if norm < GRADIENT_TOL {
            converged = true;
            break;
        }
        let dir = grad.map(|g| sign * g / norm);
        loop {
            let trial = reorthonormalize(&((skew(&dir) * step).exp() * q));
            let trial_value = objective(&trial, &j_ref);
            if sign * (trial_value - value) > 0.0 {
                q = trial;
                value = trial_value;
                step = (step * 1.5).min(MAX_STEP);
                observe(&Acs::from_matrix_unchecked(q * j_ref * q.transpose()), value);
                break;
            }
            step *= 0.5;
            if step < STEP_TOL {
                break;
            }
        }
        if step < STEP_TOL {
            converged = true;
            break;
        }
    }

    let acs = validate(&(q * j_ref * q.transpose())).expect("conjugation preserves Z");
    RestartOutcome {
        value: nijenhuis_norm(&acs),
        acs,
        iterations,
        converged,
    }
}

fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(index as u64);
    rng
}

fn run(
    direction: Direction,
    seed: u64,
    restarts: usize,
    max_iters: usize,
) -> Result<SearchReport, SearchError> {
    if restarts == 0 {
        return Err(SearchError::NoRestarts);
    }
    let outcomes: Vec<RestartOutcome> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let start = random_acs_with(&mut restart_rng(seed, i));
            search_from(&start, direction, max_iters, |_, _| {})
        })
        .collect();
    let sign = direction.sign();
    let best = outcomes
        .iter()
        .reduce(|a, b| if sign * (b.value - a.value) > 0.0 { b } else { a })
        .expect("at least one restart");
    let report = SearchReport {
        best_value: best.value,
        best_acs: best.acs,
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        restarts,
        converged: outcomes.iter().any(|o| o.converged),
    };
    if report.converged {
        Ok(report)
    } else {
        Err(SearchError::NoConvergence(Box::new(report)))
    }
}

/// Best of `restarts` ascents from seeded random starts.
pub fn maximize(seed: u64, restarts: usize, max_iters: usize) -> Result<SearchReport, SearchError> {
    run(Direction::Maximize, seed, restarts, max_iters)
}

/// Best of `restarts` descents from seeded random starts.
pub fn minimize(seed: u64, restarts: usize, max_iters: usize) -> Result<SearchReport, SearchError> {
    run(Direction::Minimize, seed, restarts, max_iters)
}
