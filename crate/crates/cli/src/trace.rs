//! Line-oriented run traces, byte-identical across runs for the same
//! config in rational mode.
//!
//! ```text
//! HEADER lap|simplex|affine|oracle <m> <n>
//! STAGE <s> P <m values> T <t> JSTAR <j,..> SIGMA <j,..> D <m values> OBJ <value>
//! PIVOT <k> ENTER <j> LEAVE <j> OBJ <value>        (simplex)
//! ITER <k> OBJ <value>                             (affine)
//! STATUS <verdict>
//! ```
//!
//! Rationals print as `p/q`, floats as their shortest round-trip
//! decimal. Facet and variable indices are 1-based.

use std::fmt::Write;

use lapkit::baselines::affine::AffineRun;
use lapkit::baselines::simplex::SimplexOutcome;
use lapkit::lap::LapResult;
use lapkit::scalar::Scalar;

fn commas(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn lap_trace<S: Scalar>(m: usize, n: usize, result: &LapResult<S>) -> String {
    let mut out = format!("HEADER lap {m} {n}\n");
    for stage in &result.trajectory {
        writeln!(
            out,
            "STAGE {} P {} T {} JSTAR {} SIGMA {} D {} OBJ {}",
            stage.s,
            stage.point,
            stage.t_star,
            commas(&stage.j_star),
            commas(&stage.sigma_after),
            stage.direction,
            stage.objective,
        )
        .unwrap();
    }
    writeln!(out, "STATUS {}", result.status).unwrap();
    out
}

pub fn simplex_trace<S: Scalar>(m: usize, n: usize, outcome: &SimplexOutcome<S>) -> String {
    let mut out = format!("HEADER simplex {m} {n}\n");
    for pivot in &outcome.pivots {
        writeln!(
            out,
            "PIVOT {} ENTER {} LEAVE {} OBJ {}",
            pivot.step, pivot.entering, pivot.leaving, pivot.objective,
        )
        .unwrap();
    }
    writeln!(out, "STATUS Optimal").unwrap();
    out
}

/// Header plus terminal status for runs that ended without an outcome
/// (unbounded pivoting, infeasible enumeration).
pub fn status_only_trace(method: &str, m: usize, n: usize, status: &str) -> String {
    format!("HEADER {method} {m} {n}\nSTATUS {status}\n")
}

pub fn affine_trace(m: usize, n: usize, run: &AffineRun) -> String {
    let mut out = format!("HEADER affine {m} {n}\n");
    for (k, objective) in run.objectives.iter().enumerate() {
        writeln!(out, "ITER {} OBJ {}", k + 1, objective).unwrap();
    }
    writeln!(out, "STATUS {}", run.status).unwrap();
    out
}

pub fn oracle_trace(m: usize, n: usize) -> String {
    format!("HEADER oracle {m} {n}\nSTATUS Optimal\n")
}
