//! Full-tableau simplex with Bland's rule on both choices: the entering
//! variable is the smallest index with a negative reduced cost, the
//! leaving row is the ratio-test minimum with ties broken by smallest
//! basic variable index. Deterministic and cycle-free.

use thiserror::Error;

use crate::linalg::Vector;
use crate::model::SimplexTableau;
use crate::scalar::Scalar;

/// One pivot: entering/leaving variable (1-based) and the tableau after
/// the pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct PivotRecord<S> {
    pub step: usize,
    pub entering: usize,
    pub leaving: usize,
    pub objective: S,
    pub tableau_after: SimplexTableau<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome<S> {
    /// Optimal primal variables (length n, slacks excluded).
    pub x: Vector<S>,
    pub objective: S,
    pub pivots: Vec<PivotRecord<S>>,
    pub final_tableau: SimplexTableau<S>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimplexError {
    #[error("unbounded: entering column {entering} has no positive entry")]
    Unbounded { entering: usize },
    #[error("pivot limit of {0} exceeded")]
    PivotLimit(usize),
}

fn eps<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64_lossy(1e-9)
    }
}

/// Runs the tableau to optimality, recording every pivot.
pub fn simplex_solve<S: Scalar>(
    tableau: &SimplexTableau<S>,
    max_pivots: usize,
) -> Result<SimplexOutcome<S>, SimplexError> {
    let mut t = tableau.clone();
    let m = t.m();
    let n = t.n();
    let cost_row = m;
    let eps = eps::<S>();
    let mut pivots = Vec::new();

    for step in 1.. {
        let entering = (0..n + m).find(|&j| t.grid.get(cost_row, j).clone() + eps.clone() < S::zero());
        let Some(enter) = entering else {
            break; // no negative reduced cost: optimal
        };
        let mut leave_row: Option<usize> = None;
        let mut best_ratio: Option<S> = None;
        for r in 0..m {
            let coeff = t.grid.get(r, enter);
            if coeff.clone() <= eps.clone() {
                continue;
            }
            let ratio = t.rhs(r).clone() / coeff.clone();
            let better = match &best_ratio {
                None => true,
                Some(best) => {
                    ratio < best.clone()
                        || (ratio == *best && t.basis[r] < t.basis[leave_row.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                leave_row = Some(r);
            }
        }
        let Some(row) = leave_row else {
            return Err(SimplexError::Unbounded { entering: enter + 1 });
        };
        if step > max_pivots {
            return Err(SimplexError::PivotLimit(max_pivots));
        }
        let leaving = t.basis[row];
        pivot(&mut t, row, enter);
        pivots.push(PivotRecord {
            step,
            entering: enter + 1,
            leaving: leaving + 1,
            objective: t.objective(),
            tableau_after: t.clone(),
        });
    }

    let mut x = vec![S::zero(); n];
    for (r, &var) in t.basis.iter().enumerate() {
        if var < n {
            x[var] = t.rhs(r).clone();
        }
    }
    Ok(SimplexOutcome {
        x: Vector::new(x),
        objective: t.objective(),
        pivots,
        final_tableau: t,
    })
}

fn pivot<S: Scalar>(t: &mut SimplexTableau<S>, row: usize, col: usize) {
    let width = t.grid.cols();
    let rows = t.grid.rows();
    let pivot = t.grid.get(row, col).clone();
    for j in 0..width {
        let v = t.grid.get(row, j).clone() / pivot.clone();
        t.grid.set(row, j, v);
    }
    for r in 0..rows {
        if r == row {
            continue;
        }
        let factor = t.grid.get(r, col).clone();
        if factor.is_zero() {
            continue;
        }
        for j in 0..width {
            let v = t.grid.get(r, j).clone() - factor.clone() * t.grid.get(row, j).clone();
            t.grid.set(r, j, v);
        }
    }
    t.basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::model::{build_tableau, parse_problem, PrimalProblem};
    use crate::scalar::Rational;

    const SAMPLE: &str = "\
dim 5 5
A
2 -1 0 -1 1
0 1 1 1 1
0 2 0 1 1
1 1 1 0 1
1 0 1 0 1
b 4 1 4 6 2
c 1 1 2 3 4
";

    fn rq(s: &str) -> Rational {
        Rational::parse_number(s).unwrap()
    }

    #[test]
    fn sample_runs_in_four_pivots() {
        let p = parse_problem::<Rational>(SAMPLE).unwrap().problem;
        let out = simplex_solve(&build_tableau(&p).unwrap(), 200).unwrap();
        assert_eq!(out.pivots.len(), 4);
        assert_eq!(out.x, Vector::from_ints(&[2, 0, 0, 1, 0]));
        assert_eq!(out.objective, rq("5"));
        let log: Vec<(usize, usize)> = out
            .pivots
            .iter()
            .map(|p| (p.entering, p.leaving))
            .collect();
        assert_eq!(log, vec![(1, 6), (2, 10), (4, 2), (6, 7)]);
    }

    #[test]
    fn first_pivot_matches_published_row() {
        let p = parse_problem::<Rational>(SAMPLE).unwrap().problem;
        let out = simplex_solve(&build_tableau(&p).unwrap(), 200).unwrap();
        let after1 = &out.pivots[0].tableau_after;
        // x1 becomes basic in row 0: (1, -1/2, 0, -1/2, 1/2, 1/2, 0, 0, 0, 0 | 2)
        let want: Vec<Rational> = ["1", "-1/2", "0", "-1/2", "1/2", "1/2", "0", "0", "0", "0", "2"]
            .iter()
            .map(|s| rq(s))
            .collect();
        assert_eq!(after1.grid.row(0), want.as_slice());
        assert_eq!(out.pivots[0].objective, rq("2"));
    }

    #[test]
    fn nonpositive_costs_need_no_pivots() {
        let p = PrimalProblem::<Rational>::new(
            Matrix::from_int_rows(&[&[1, 1], &[2, 1]]),
            Vector::from_ints(&[4, 5]),
            Vector::from_ints(&[-1, 0]),
        )
        .unwrap();
        let out = simplex_solve(&build_tableau(&p).unwrap(), 200).unwrap();
        assert!(out.pivots.is_empty());
        assert_eq!(out.x, Vector::zeros(2));
        assert_eq!(out.objective, rq("0"));
    }

    #[test]
    fn unbounded_is_detected() {
        // max x2 with only x1 constrained
        let p = PrimalProblem::<Rational>::new(
            Matrix::from_int_rows(&[&[1, -1]]),
            Vector::from_ints(&[1]),
            Vector::from_ints(&[0, 1]),
        )
        .unwrap();
        let err = simplex_solve(&build_tableau(&p).unwrap(), 200).unwrap_err();
        assert_eq!(err, SimplexError::Unbounded { entering: 2 });
    }

    #[test]
    fn pivot_limit_is_enforced() {
        let p = parse_problem::<Rational>(SAMPLE).unwrap().problem;
        let err = simplex_solve(&build_tableau(&p).unwrap(), 2).unwrap_err();
        assert_eq!(err, SimplexError::PivotLimit(2));
    }

    #[test]
    fn pivot_log_is_deterministic() {
        let p = parse_problem::<Rational>(SAMPLE).unwrap().problem;
        let t = build_tableau(&p).unwrap();
        let a = simplex_solve(&t, 200).unwrap();
        let b = simplex_solve(&t, 200).unwrap();
        assert_eq!(a, b);
    }
}
