//! Short-step affine scaling on the dual in equality form.
//!
//! The dual `min { b'y : y'A >= c, y >= 0 }` becomes
//! `min { b'y + M s6 : [A' -I](y; s) + q s6 = c, y, s, s6 >= 0 }` with
//! `q = c - [A' -I] e`, so the all-ones vector is a feasible interior
//! start and the artificial column carries a big-M penalty. Each step
//! solves the normal equations `(A0 X^2 A0') P = A0 X^2 c0`, forms the
//! reduced costs `r = c0 - A0' P`, and moves `x` against `X^2 r` with a
//! fixed fraction `beta` of the scaled-space unit step, which keeps the
//! iterate strictly interior. Float arithmetic only.

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Vector};
use crate::model::PrimalProblem;

pub const DEFAULT_BETA: f64 = 0.997;
pub const DEFAULT_EPSILON: f64 = 0.01;
pub const DEFAULT_BIG_M: f64 = 1e4;

/// Interior iterate over the augmented system, `x` of length n + m + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineState {
    pub k: usize,
    pub x: Vector<f64>,
    pub a0: Matrix<f64>,
    pub c0: Vector<f64>,
    pub beta: f64,
    pub epsilon: f64,
    pub big_m: f64,
}

impl AffineState {
    /// Current objective `c0' x` (the big-M term included).
    pub fn objective(&self) -> f64 {
        self.c0.inner(&self.x).expect("iterate dimension")
    }

    /// First m entries of the iterate: the current dual point estimate.
    pub fn dual_point(&self) -> Vector<f64> {
        let m = self.c0.len() - 1 - self.a0.rows();
        Vector::new(self.x.as_slice()[..m].to_vec())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AffineOutcome {
    Continue(AffineState),
    Optimal(AffineState),
    Unbounded(AffineState),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error("normal equations are singular")]
    Singular,
    #[error("non-finite value in affine scaling step")]
    NonFinite,
}

/// Builds the augmented system and the all-ones interior start.
pub fn affine_init(p: &PrimalProblem<f64>, big_m: f64) -> AffineState {
    let (m, n) = (p.m(), p.n());
    // a0 = [A' | -I | q], n rows by m + n + 1 columns
    let mut a0 = Matrix::zeros(n, m + n + 1);
    for i in 0..n {
        for j in 0..m {
            a0.set(i, j, *p.a().get(j, i));
        }
        a0.set(i, m + i, -1.0);
    }
    for i in 0..n {
        // q_i = c_i - (row sum of [A' -I])_i
        let row_sum: f64 = (0..m + n).map(|j| a0.get(i, j)).sum();
        a0.set(i, m + n, p.c()[i] - row_sum);
    }
    let mut c0 = vec![0.0; m + n + 1];
    c0[..m].copy_from_slice(p.b().as_slice());
    c0[m + n] = big_m;
    AffineState {
        k: 0,
        x: Vector::new(vec![1.0; m + n + 1]),
        a0,
        c0: Vector::new(c0),
        beta: DEFAULT_BETA,
        epsilon: DEFAULT_EPSILON,
        big_m,
    }
}

/// One affine-scaling step: optimality and unboundedness checks first,
/// then the interior update.
pub fn affine_step(state: &AffineState) -> Result<AffineOutcome, AffineError> {
    let a0 = &state.a0;
    let x = state.x.as_slice();
    let rows = a0.rows();
    let cols = a0.cols();

    let x2: Vec<f64> = x.iter().map(|v| v * v).collect();
    // lhs = A0 X^2 A0', rhs = A0 X^2 c0
    let mut lhs = Matrix::<f64>::zeros(rows, rows);
    let mut rhs = Vec::with_capacity(rows);
    for r in 0..rows {
        for s in 0..rows {
            let acc: f64 = (0..cols)
                .map(|j| a0.get(r, j) * x2[j] * a0.get(s, j))
                .sum();
            lhs.set(r, s, acc);
        }
        rhs.push((0..cols).map(|j| a0.get(r, j) * x2[j] * state.c0[j]).sum());
    }
    let p = lhs.solve(&Vector::new(rhs)).map_err(|e| match e {
        LinalgError::Singular { .. } => AffineError::Singular,
        _ => AffineError::NonFinite,
    })?;

    // r = c0 - A0' p
    let r: Vec<f64> = (0..cols)
        .map(|j| state.c0[j] - (0..rows).map(|i| a0.get(i, j) * p[i]).sum::<f64>())
        .collect();
    if r.iter().any(|v| !v.is_finite()) {
        return Err(AffineError::NonFinite);
    }

    let dual_gap: f64 = x.iter().zip(&r).map(|(xi, ri)| xi * ri).sum();
    if r.iter().all(|&v| v > 0.0) && dual_gap < state.epsilon {
        return Ok(AffineOutcome::Optimal(state.clone()));
    }
    if r.iter().zip(&x2).all(|(ri, x2i)| -x2i * ri >= 0.0) {
        return Ok(AffineOutcome::Unbounded(state.clone()));
    }

    let norm: f64 = x
        .iter()
        .zip(&r)
        .map(|(xi, ri)| (xi * ri) * (xi * ri))
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(AffineError::NonFinite);
    }
    let next: Vec<f64> = x
        .iter()
        .zip(x2.iter().zip(&r))
        .map(|(xi, (x2i, ri))| xi - state.beta * x2i * ri / norm)
        .collect();
    if next.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(AffineError::NonFinite);
    }
    Ok(AffineOutcome::Continue(AffineState {
        k: state.k + 1,
        x: Vector::new(next),
        ..state.clone()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineRunStatus {
    Optimal,
    Unbounded,
    MaxIterations,
}

impl std::fmt::Display for AffineRunStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AffineRunStatus::Optimal => "Optimal",
            AffineRunStatus::Unbounded => "Unbounded",
            AffineRunStatus::MaxIterations => "MaxIterations",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffineRun {
    /// Objective after each completed iteration.
    pub objectives: Vec<f64>,
    pub state: AffineState,
    pub status: AffineRunStatus,
}

/// Iterates until the optimality or unboundedness check fires, or
/// `max_iters` steps have been taken.
pub fn affine_run(init: AffineState, max_iters: usize) -> Result<AffineRun, AffineError> {
    let mut state = init;
    let mut objectives = Vec::new();
    for _ in 0..max_iters {
        match affine_step(&state)? {
            AffineOutcome::Continue(next) => {
                objectives.push(next.objective());
                state = next;
            }
            AffineOutcome::Optimal(s) => {
                return Ok(AffineRun {
                    objectives,
                    state: s,
                    status: AffineRunStatus::Optimal,
                })
            }
            AffineOutcome::Unbounded(s) => {
                return Ok(AffineRun {
                    objectives,
                    state: s,
                    status: AffineRunStatus::Unbounded,
                })
            }
        }
    }
    Ok(AffineRun {
        objectives,
        state,
        status: AffineRunStatus::MaxIterations,
    })
}
