//! Method dispatch, report building, and exit-code mapping.
//!
//! Exit codes: 0 solved, 1 infeasible or unbounded, 2 parse or usage
//! error, 3 numerical failure.

use lapkit::baselines::affine::{self, AffineRunStatus};
use lapkit::baselines::oracle::{self, OracleError};
use lapkit::baselines::simplex::{simplex_solve, SimplexError};
use lapkit::lap::{solve_lap, LapError, LapStatus};
use lapkit::linalg::Vector;
use lapkit::model::{build_tableau, parse_problem, to_dual, ParsedProblem};
use lapkit::scalar::{Rational, Scalar};

use crate::trace;
use crate::{Arithmetic, Method};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_UNSOLVABLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Hard failure: nothing to report beyond the message.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

/// Completed run: report text for stdout plus the optional trace body.
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub trace: Option<String>,
}

pub struct Settings {
    pub method: Method,
    pub arithmetic: Arithmetic,
    pub start: Option<String>,
    pub tol: Option<String>,
    pub max_iters: Option<usize>,
    pub big_m: f64,
    pub beta: f64,
    pub want_trace: bool,
}

pub fn run(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    // affine is float-only and the oracle is exact-only; both override
    // the requested arithmetic
    match (settings.method, settings.arithmetic) {
        (Method::Oracle, _) => run_oracle(text, settings),
        (Method::Affine, _) => run_affine(text, settings),
        (Method::Compare, _) => run_compare(text, settings),
        (method, Arithmetic::Rational) => run_exact_method(method, text, settings),
        (method, Arithmetic::Float) => run_float_method(method, text, settings),
    }
}

fn run_exact_method(
    method: Method,
    text: &str,
    settings: &Settings,
) -> Result<Outcome, CliError> {
    match method {
        Method::Lap => run_lap::<Rational>(text, settings),
        Method::Simplex => run_simplex::<Rational>(text, settings),
        _ => unreachable!("dispatched earlier"),
    }
}

fn run_float_method(method: Method, text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    match method {
        Method::Lap => run_lap::<f64>(text, settings),
        Method::Simplex => run_simplex::<f64>(text, settings),
        _ => unreachable!("dispatched earlier"),
    }
}

fn parse_input<S: Scalar>(text: &str) -> Result<ParsedProblem<S>, CliError> {
    parse_problem::<S>(text).map_err(|e| CliError::parse(e.to_string()))
}

fn parse_tol<S: Scalar>(settings: &Settings) -> Result<S, CliError> {
    match &settings.tol {
        None => Ok(S::default_tol()),
        Some(raw) => S::parse_number(raw)
            .or_else(|| raw.parse::<f64>().ok().filter(|v| v.is_finite()).map(S::from_f64_lossy))
            .ok_or_else(|| CliError::parse(format!("invalid --tol value {raw:?}"))),
    }
}

fn parse_start<S: Scalar>(
    raw: Option<&str>,
    from_file: Option<Vector<S>>,
    m: usize,
) -> Result<Option<Vector<S>>, CliError> {
    let Some(raw) = raw else {
        return Ok(from_file);
    };
    let values: Option<Vec<S>> = raw.split_whitespace().map(S::parse_number).collect();
    let values = values.ok_or_else(|| CliError::parse(format!("invalid --start value {raw:?}")))?;
    if values.len() != m {
        return Err(CliError::parse(format!(
            "--start has {} values, expected {m}",
            values.len()
        )));
    }
    Ok(Some(Vector::new(values)))
}

struct LapRun<S: Scalar> {
    result: Result<lapkit::lap::LapResult<S>, LapError>,
    m: usize,
    n: usize,
}

fn lap_inner<S: Scalar>(text: &str, settings: &Settings) -> Result<LapRun<S>, CliError> {
    let parsed = parse_input::<S>(text)?;
    let (m, n) = (parsed.problem.m(), parsed.problem.n());
    let start = parse_start(settings.start.as_deref(), parsed.start.clone(), m)?;
    let Some(start) = start else {
        return Err(CliError::parse(
            "method lap requires a start point: add a `start` line to the problem file or pass --start",
        ));
    };
    let tol = parse_tol::<S>(settings)?;
    let max_iters = settings.max_iters.unwrap_or(m + 5);
    let dp = to_dual(&parsed.problem);
    let goal = dp.objective.neg();
    Ok(LapRun {
        result: solve_lap(&dp, &start, &goal, &tol, max_iters),
        m,
        n,
    })
}

fn run_lap<S: Scalar>(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let run = lap_inner::<S>(text, settings)?;
    let result = run.result.map_err(map_lap_error)?;
    let trace = settings
        .want_trace
        .then(|| trace::lap_trace(run.m, run.n, &result));
    let stages = result.trajectory.len();
    let (code, headline) = match result.status {
        LapStatus::FullyBlocked => (EXIT_SOLVED, "optimal point"),
        LapStatus::DirectionVanished => (EXIT_SOLVED, "stationary point"),
        LapStatus::MaxIterations => (EXIT_SOLVED, "point"),
        LapStatus::Unblocked => {
            return Ok(Outcome {
                code: EXIT_UNSOLVABLE,
                report: "status Unblocked\nunbounded: no facet blocks the descent direction\n"
                    .into(),
                trace,
            });
        }
    };
    let report = format!(
        "status {}\n{headline} {}, objective {}, stages {stages}\n",
        result.status, result.final_point, result.final_objective,
    );
    Ok(Outcome {
        code,
        report,
        trace,
    })
}

fn map_lap_error(e: LapError) -> CliError {
    match e {
        LapError::InfeasibleStart => CliError {
            code: EXIT_UNSOLVABLE,
            message: "start point is not dual-feasible".into(),
        },
        LapError::Projection(p) => CliError::numerical(format!("projection failed: {p}")),
        other => CliError::parse(other.to_string()),
    }
}

fn run_simplex<S: Scalar>(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let parsed = parse_input::<S>(text)?;
    let (m, n) = (parsed.problem.m(), parsed.problem.n());
    let tableau = build_tableau(&parsed.problem).map_err(|e| CliError::parse(e.to_string()))?;
    let max_pivots = settings.max_iters.unwrap_or(200);
    match simplex_solve(&tableau, max_pivots) {
        Ok(outcome) => {
            let trace = settings
                .want_trace
                .then(|| trace::simplex_trace(m, n, &outcome));
            let report = format!(
                "status Optimal\noptimal point {}, objective {}, pivots {}\n",
                outcome.x,
                outcome.objective,
                outcome.pivots.len(),
            );
            Ok(Outcome {
                code: EXIT_SOLVED,
                report,
                trace,
            })
        }
        Err(SimplexError::Unbounded { entering }) => Ok(Outcome {
            code: EXIT_UNSOLVABLE,
            report: format!(
                "status Unbounded\nunbounded: column {entering} has no blocking row\n"
            ),
            trace: settings
                .want_trace
                .then(|| trace::status_only_trace("simplex", m, n, "Unbounded")),
        }),
        Err(e @ SimplexError::PivotLimit(_)) => Err(CliError::numerical(e.to_string())),
    }
}

fn run_affine(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let parsed = parse_input::<f64>(text)?;
    let (m, n) = (parsed.problem.m(), parsed.problem.n());
    let mut state = affine::affine_init(&parsed.problem, settings.big_m);
    state.beta = settings.beta;
    let max_iters = settings.max_iters.unwrap_or(50);
    let run = affine::affine_run(state, max_iters).map_err(|e| CliError::numerical(e.to_string()))?;
    let trace = settings
        .want_trace
        .then(|| trace::affine_trace(m, n, &run));
    let iterations = run.objectives.len();
    let code = match run.status {
        AffineRunStatus::Unbounded => EXIT_UNSOLVABLE,
        _ => EXIT_SOLVED,
    };
    let report = format!(
        "status {}\npoint {}, objective {}, iterations {iterations}\n",
        run.status,
        run.state.dual_point(),
        run.state.objective(),
    );
    Ok(Outcome {
        code,
        report,
        trace,
    })
}

fn run_oracle(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let parsed = parse_input::<Rational>(text)?;
    let (m, n) = (parsed.problem.m(), parsed.problem.n());
    let dp = to_dual(&parsed.problem);
    match oracle::oracle_solve(&dp) {
        Ok(result) => {
            let report = format!(
                "status Optimal\noptimal point {}, objective {}, subsets {}\n",
                result.argmin, result.optimum, result.vertices_checked,
            );
            Ok(Outcome {
                code: EXIT_SOLVED,
                report,
                trace: settings.want_trace.then(|| trace::oracle_trace(m, n)),
            })
        }
        Err(OracleError::NoFeasibleVertex) => Ok(Outcome {
            code: EXIT_UNSOLVABLE,
            report: "status Infeasible\nno feasible vertex\n".into(),
            trace: settings
                .want_trace
                .then(|| trace::status_only_trace("oracle", m, n, "Infeasible")),
        }),
        Err(e @ OracleError::GuardExceeded { .. }) => Err(CliError::parse(e.to_string())),
    }
}

/// Runs every method and tabulates one row each, in a fixed order.
fn run_compare(text: &str, settings: &Settings) -> Result<Outcome, CliError> {
    // fail early on unparsable input; everything else degrades per row
    parse_input::<Rational>(text)?;

    let mut report = String::from("method objective steps status\n");
    let mut traces = String::new();
    for method in [Method::Lap, Method::Simplex, Method::Affine, Method::Oracle] {
        let sub = Settings {
            method,
            arithmetic: settings.arithmetic,
            start: settings.start.clone(),
            tol: settings.tol.clone(),
            max_iters: settings.max_iters,
            big_m: settings.big_m,
            beta: settings.beta,
            want_trace: settings.want_trace,
        };
        match run(text, &sub) {
            Ok(outcome) => {
                report.push_str(&compare_row(method, &outcome.report));
                if let Some(t) = outcome.trace {
                    traces.push_str(&t);
                }
            }
            Err(e) => {
                report.push_str(&format!("{} - - error({})\n", method_name(method), e.code));
            }
        }
    }
    Ok(Outcome {
        code: EXIT_SOLVED,
        report,
        trace: settings.want_trace.then_some(traces),
    })
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Lap => "lap",
        Method::Simplex => "simplex",
        Method::Affine => "affine",
        Method::Oracle => "oracle",
        Method::Compare => "compare",
    }
}

/// Distills a single-method report into `method objective steps status`.
fn compare_row(method: Method, report: &str) -> String {
    let mut status = "-";
    let mut objective = String::from("-");
    let mut steps = String::from("-");
    for line in report.lines() {
        if let Some(rest) = line.strip_prefix("status ") {
            status = rest;
        }
        if let Some(at) = line.find("objective ") {
            let tail = &line[at + "objective ".len()..];
            objective = tail.split(',').next().unwrap_or("-").trim().to_string();
            if let Some((_, count)) = line.rsplit_once(' ') {
                steps = count.to_string();
            }
        }
    }
    format!("{} {objective} {steps} {status}\n", method_name(method))
}
