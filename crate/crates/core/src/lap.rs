//! The adjusting-descent engine.
//!
//! From a dual-feasible point the engine walks along the projected goal
//! direction until one or more facets block the move, absorbs the
//! blockers into the active set, re-projects the goal onto the
//! intersection of all active facets, and repeats. Movement never leaves
//! a facet once it is active (the direction stays orthogonal to every
//! active normal), so the active set only grows, and each step raises
//! its rank; the walk terminates after at most `m` stages.

use thiserror::Error;

use crate::linalg::Vector;
use crate::model::{is_dual_feasible, DualProblem};
use crate::projection::{HatProjector, ProjectionError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapStatus {
    /// The active blockers span the whole space; the point is a vertex.
    FullyBlocked,
    /// The projected direction vanished before the blockers spanned.
    DirectionVanished,
    /// No facet blocks the current direction; the region is unbounded
    /// along it.
    Unblocked,
    MaxIterations,
}

impl std::fmt::Display for LapStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            LapStatus::FullyBlocked => "FullyBlocked",
            LapStatus::DirectionVanished => "DirectionVanished",
            LapStatus::Unblocked => "Unblocked",
            LapStatus::MaxIterations => "MaxIterations",
        };
        f.write_str(name)
    }
}

/// One stage of the walk: the point reached, how it was reached, and the
/// direction computed on arrival (used to leave toward the next stage).
#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord<S> {
    pub s: usize,
    pub point: Vector<S>,
    /// Active blocker indices (1-based, ascending) after this stage.
    pub sigma_after: Vec<usize>,
    pub t_star: S,
    /// Facets that blocked this step (1-based, ascending).
    pub j_star: Vec<usize>,
    pub direction: Vector<S>,
    /// `(b, P)` at this stage.
    pub objective: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LapResult<S> {
    pub trajectory: Vec<StageRecord<S>>,
    pub status: LapStatus,
    pub final_point: Vector<S>,
    pub final_objective: S,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LapError {
    #[error("start point is not dual-feasible")]
    InfeasibleStart,
    #[error("goal direction is zero")]
    ZeroGoal,
    #[error("direction is zero")]
    ZeroDirection,
    #[error("point has length {len}, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// Outcome of a blocker scan.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome<S> {
    Blocked { t_star: S, j_star: Vec<usize> },
    Unblocked,
}

fn ties<S: Scalar>(t: &S, min: &S) -> bool {
    if S::EXACT {
        t == min
    } else {
        let scale = {
            let a = min.abs();
            if a > S::one() {
                a
            } else {
                S::one()
            }
        };
        (t.clone() - min.clone()).abs() <= S::from_f64_lossy(1e-9) * scale
    }
}

/// Scans the facets not yet in `sigma` for the first blocker along `d`.
///
/// For each facet with `(tau_j, d)` nonzero (above `tol`), the ray
/// `P + t d` meets it at `t_j = (c_j - (tau_j, P)) / (tau_j, d)`. The
/// blockers are all facets attaining the minimum positive `t_j`; ties
/// within a relative 1e-9 in float mode (exact equality in rational
/// mode) are all included, which is how several facets can block at
/// once.
pub fn next_stage<S: Scalar>(
    dp: &DualProblem<S>,
    point: &Vector<S>,
    d: &Vector<S>,
    sigma: &[usize],
    tol: &S,
) -> Result<StepOutcome<S>, LapError> {
    if point.len() != dp.m {
        return Err(LapError::LengthMismatch {
            len: point.len(),
            expected: dp.m,
        });
    }
    if d.max_abs() <= *tol {
        return Err(LapError::ZeroDirection);
    }
    let mut candidates: Vec<(usize, S)> = Vec::new();
    for facet in &dp.facets {
        if sigma.contains(&facet.index) {
            continue;
        }
        let den = facet.tau.inner(d).expect("facet dimension");
        if den.abs() <= *tol {
            continue;
        }
        let t = -facet.slack(point) / den;
        if t > *tol {
            candidates.push((facet.index, t));
        }
    }
    let Some(t_star) = candidates
        .iter()
        .map(|(_, t)| t.clone())
        .min_by(|a, b| a.partial_cmp(b).expect("finite step parameters"))
    else {
        return Ok(StepOutcome::Unblocked);
    };
    let j_star = candidates
        .iter()
        .filter(|(_, t)| ties(t, &t_star))
        .map(|(j, _)| *j)
        .collect();
    Ok(StepOutcome::Blocked { t_star, j_star })
}

/// `P + t d`.
pub fn advance<S: Scalar>(point: &Vector<S>, d: &Vector<S>, t: &S) -> Vector<S> {
    point.add(&d.scale(t)).expect("direction dimension")
}

struct Walk<'a, S: Scalar> {
    dp: &'a DualProblem<S>,
    goal: &'a Vector<S>,
    tol: &'a S,
    sigma: Vec<usize>,
    direction: Vector<S>,
    rank: usize,
}

impl<'a, S: Scalar> Walk<'a, S> {
    fn blocked_status(&self) -> LapStatus {
        if self.rank == self.dp.m {
            LapStatus::FullyBlocked
        } else {
            LapStatus::DirectionVanished
        }
    }

    fn direction_vanished(&self) -> bool {
        self.direction.max_abs() <= *self.tol
    }

    fn reproject(&mut self) -> Result<(), LapError> {
        let normals: Vec<Vector<S>> = self
            .sigma
            .iter()
            .map(|&j| self.dp.facet(j).tau.clone())
            .collect();
        let hp = HatProjector::build(&normals, &self.sigma, self.tol)?;
        self.rank = hp.rank();
        self.direction = hp.project(self.goal);
        Ok(())
    }

    fn adopt(&mut self, blockers: &[usize]) -> Result<(), LapError> {
        self.sigma.extend_from_slice(blockers);
        self.sigma.sort_unstable();
        self.sigma.dedup();
        self.reproject()
    }

    /// Folds facets that already touch `point` and that the current
    /// direction would exit into the active set, re-projecting until the
    /// direction respects every active facet. A no-op away from the
    /// boundary; at a degenerate landing (or a boundary start point) it
    /// keeps the walk feasible.
    fn absorb_active_exits(&mut self, point: &Vector<S>) -> Result<(), LapError> {
        loop {
            if self.direction_vanished() {
                return Ok(());
            }
            let exiting: Vec<usize> = self
                .dp
                .facets
                .iter()
                .filter(|f| !self.sigma.contains(&f.index))
                .filter(|f| f.slack(point).abs() <= *self.tol)
                .filter(|f| {
                    f.tau.inner(&self.direction).expect("facet dimension") < -self.tol.clone()
                })
                .map(|f| f.index)
                .collect();
            if exiting.is_empty() {
                return Ok(());
            }
            self.adopt(&exiting)?;
        }
    }
}

/// Runs the full walk from `p0` with goal direction `goal` (callers
/// normally pass `-b`, the descent direction of the dual objective).
pub fn solve_lap<S: Scalar>(
    dp: &DualProblem<S>,
    p0: &Vector<S>,
    goal: &Vector<S>,
    tol: &S,
    max_iters: usize,
) -> Result<LapResult<S>, LapError> {
    if p0.len() != dp.m || goal.len() != dp.m {
        return Err(LapError::LengthMismatch {
            len: p0.len().max(goal.len()),
            expected: dp.m,
        });
    }
    if goal.max_abs() <= *tol {
        return Err(LapError::ZeroGoal);
    }
    if !is_dual_feasible(dp, p0, tol) {
        return Err(LapError::InfeasibleStart);
    }

    let mut point = p0.clone();
    let mut walk = Walk {
        dp,
        goal,
        tol,
        sigma: Vec::new(),
        direction: goal.clone(),
        rank: 0,
    };
    let mut trajectory: Vec<StageRecord<S>> = Vec::new();

    // A boundary start may already pin the goal direction.
    walk.absorb_active_exits(&point)?;

    let mut status = LapStatus::MaxIterations;
    if walk.direction_vanished() {
        status = walk.blocked_status();
    } else {
        for s in 1..=max_iters {
            match next_stage(dp, &point, &walk.direction, &walk.sigma, tol)? {
                StepOutcome::Unblocked => {
                    status = LapStatus::Unblocked;
                    break;
                }
                StepOutcome::Blocked { t_star, j_star } => {
                    point = advance(&point, &walk.direction, &t_star);
                    walk.adopt(&j_star)?;
                    trajectory.push(StageRecord {
                        s,
                        point: point.clone(),
                        sigma_after: walk.sigma.clone(),
                        t_star,
                        j_star,
                        direction: walk.direction.clone(),
                        objective: dp.objective.inner(&point).expect("point dimension"),
                    });
                    if walk.direction_vanished() {
                        status = walk.blocked_status();
                        break;
                    }
                    walk.absorb_active_exits(&point)?;
                    if walk.direction_vanished() {
                        status = walk.blocked_status();
                        break;
                    }
                }
            }
        }
    }

    let final_objective = dp.objective.inner(&point).expect("point dimension");
    Ok(LapResult {
        trajectory,
        status,
        final_point: point,
        final_objective,
    })
}
