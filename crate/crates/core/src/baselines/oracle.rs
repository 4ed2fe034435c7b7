//! Brute-force vertex enumeration, the trust anchor for everything else.
//!
//! Every m-subset of the n + m facets whose normals are independent
//! pins a candidate vertex; solving the square system exactly and
//! keeping the feasible ones yields the true optimum on small
//! instances. The scan is embarrassingly parallel: each subset is
//! evaluated independently and the results merge through a total order
//! (objective first, then lexicographic vertex), so the parallel and
//! sequential scans return bit-identical answers.
//!
//! Arithmetic is always exact rational regardless of the solve mode
//! elsewhere.

use itertools::Itertools;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{Matrix, Vector};
use crate::model::DualProblem;
use crate::scalar::{Rational, Scalar};

/// Enumeration guard: beyond this the scan is no longer a sensible
/// ground truth.
pub const MAX_M: usize = 8;
pub const MAX_FACETS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimum: Rational,
    pub argmin: Vector<Rational>,
    /// Subsets scanned, singular ones included.
    pub vertices_checked: u64,
    pub feasible_vertices: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance too large for enumeration: m={m}, facets={facets} (limits {MAX_M}, {MAX_FACETS})")]
    GuardExceeded { m: usize, facets: usize },
    #[error("no feasible vertex found")]
    NoFeasibleVertex,
}

/// Candidate plus counters, merged associatively across subsets.
#[derive(Clone)]
struct Scan {
    checked: u64,
    feasible: u64,
    best: Option<(Rational, Vector<Rational>)>,
}

impl Scan {
    fn empty() -> Self {
        Scan {
            checked: 0,
            feasible: 0,
            best: None,
        }
    }

    fn merge(mut self, other: Scan) -> Scan {
        self.checked += other.checked;
        self.feasible += other.feasible;
        self.best = match (self.best, other.best) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => Some(if prefer(&b, &a) { b } else { a }),
        };
        self
    }
}

/// Strictly-better ordering: lower objective, ties to the
/// lexicographically smallest vertex.
fn prefer(a: &(Rational, Vector<Rational>), b: &(Rational, Vector<Rational>)) -> bool {
    if a.0 != b.0 {
        return a.0 < b.0;
    }
    for (x, y) in a.1.iter().zip(b.1.iter()) {
        if x != y {
            return x < y;
        }
    }
    false
}

fn eval_subset(dp: &DualProblem<Rational>, subset: &[usize]) -> Scan {
    let m = dp.m;
    let rows: Vec<Vec<Rational>> = subset
        .iter()
        .map(|&j| dp.facet(j).tau.as_slice().to_vec())
        .collect();
    let rhs = Vector::new(
        subset
            .iter()
            .map(|&j| dp.facet(j).offset.clone())
            .collect(),
    );
    let system = Matrix::from_rows(rows).expect("square facet system");
    debug_assert_eq!(system.rows(), m);
    let mut scan = Scan {
        checked: 1,
        feasible: 0,
        best: None,
    };
    let Ok(vertex) = system.solve(&rhs) else {
        return scan; // dependent normals: no vertex here
    };
    let feasible = dp
        .facets
        .iter()
        .all(|f| f.slack(&vertex) >= Rational::from_int(0));
    if feasible {
        let objective = dp.objective.inner(&vertex).expect("vertex dimension");
        scan.feasible = 1;
        scan.best = Some((objective, vertex));
    }
    scan
}

fn subsets(dp: &DualProblem<Rational>) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1..=dp.facet_count()).combinations(dp.m)
}

/// Sequential scan over all facet m-subsets.
pub fn oracle_solve_sequential(dp: &DualProblem<Rational>) -> Result<OracleResult, OracleError> {
    guard(dp)?;
    let scan = subsets(dp).fold(Scan::empty(), |acc, subset| {
        acc.merge(eval_subset(dp, &subset))
    });
    finish(scan)
}

/// Parallel scan; identical result to the sequential one because the
/// merge is a total-order minimum.
#[cfg(feature = "parallel")]
pub fn oracle_solve_parallel(dp: &DualProblem<Rational>) -> Result<OracleResult, OracleError> {
    guard(dp)?;
    let all: Vec<Vec<usize>> = subsets(dp).collect();
    let scan = all
        .par_iter()
        .map(|subset| eval_subset(dp, subset))
        .reduce(Scan::empty, Scan::merge);
    finish(scan)
}

/// Ground-truth solve. Uses the parallel scan when the `parallel`
/// feature is enabled, the sequential one otherwise.
pub fn oracle_solve(dp: &DualProblem<Rational>) -> Result<OracleResult, OracleError> {
    #[cfg(feature = "parallel")]
    {
        oracle_solve_parallel(dp)
    }
    #[cfg(not(feature = "parallel"))]
    {
        oracle_solve_sequential(dp)
    }
}

fn guard(dp: &DualProblem<Rational>) -> Result<(), OracleError> {
    if dp.m > MAX_M || dp.facet_count() > MAX_FACETS {
        return Err(OracleError::GuardExceeded {
            m: dp.m,
            facets: dp.facet_count(),
        });
    }
    Ok(())
}

fn finish(scan: Scan) -> Result<OracleResult, OracleError> {
    let (optimum, argmin) = scan.best.ok_or(OracleError::NoFeasibleVertex)?;
    Ok(OracleResult {
        optimum,
        argmin,
        vertices_checked: scan.checked,
        feasible_vertices: scan.feasible,
    })
}
