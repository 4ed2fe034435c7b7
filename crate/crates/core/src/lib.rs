//! Solvers for linear programs posed over the dual feasible region.
//!
//! The toolkit descends inside the dual polyhedron along projected goal
//! directions: each time the moving point hits one or more constraint
//! facets, those facets join an active blocker set and the goal direction
//! is re-projected onto the intersection subspace of the blockers via an
//! explicit Hat matrix. Alongside the descent engine there are three
//! baselines for cross-validation: a full-tableau simplex with Bland's
//! rule, a short-step affine scaling method with big-M initialization,
//! and a brute-force vertex-enumeration oracle in exact rational
//! arithmetic.
//!
//! All kernels are generic over [`Scalar`], instantiated either with
//! [`Rational`] (exact, arbitrary precision) or `f64`. The oracle's
//! subset scan is data-parallel; the `parallel` feature (on by default)
//! runs it on a rayon pool with a deterministic reduction.

pub mod baselines;
pub mod lap;
pub mod linalg;
pub mod model;
pub mod projection;
pub mod scalar;

pub use baselines::affine::{
    affine_init, affine_run, affine_step, AffineRun, AffineRunStatus, AffineState,
};
pub use baselines::ellipsoid::ellipsoid_bound;
pub use baselines::oracle::{oracle_solve, oracle_solve_sequential, OracleResult};
pub use baselines::simplex::{simplex_solve, PivotRecord, SimplexOutcome};
pub use lap::{advance, next_stage, solve_lap, LapResult, LapStatus, StageRecord};
pub use linalg::{Matrix, Vector};
pub use model::{
    build_tableau, format_problem, is_dual_feasible, parse_problem, to_dual, DualProblem, Facet,
    PrimalProblem, SimplexTableau,
};
pub use projection::{project_single, HatProjector};
pub use scalar::{Rational, Scalar};
