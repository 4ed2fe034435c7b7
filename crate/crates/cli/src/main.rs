//! `lapkit`: solve a problem file with one of the bundled methods.
//!
//! ```text
//! lapkit --method lap --input problem.lpt --arithmetic rational --trace run.trace
//! ```

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

mod run;
mod trace;

use run::{CliError, Settings, EXIT_PARSE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Adjusting descent along projected goal directions
    Lap,
    /// Full-tableau simplex with Bland's rule
    Simplex,
    /// Short-step affine scaling (always float arithmetic)
    Affine,
    /// Brute-force vertex enumeration (always rational arithmetic)
    Oracle,
    /// All methods, one summary row each
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arithmetic {
    /// Exact arbitrary-precision rationals
    Rational,
    /// 64-bit floats
    Float,
}

/// Exit codes: 0 solved, 1 infeasible/unbounded, 2 parse error,
/// 3 numerical failure.
#[derive(Parser)]
#[command(name = "lapkit", version, about)]
struct Args {
    /// Solution method
    #[arg(long)]
    method: Method,

    /// Problem file path
    #[arg(long)]
    input: PathBuf,

    /// Arithmetic mode (default rational; affine forces float, oracle
    /// forces rational)
    #[arg(long, default_value = "rational")]
    arithmetic: Arithmetic,

    /// Dual start point override: whitespace-separated numbers, e.g.
    /// --start "7 4 7 6 5"
    #[arg(long)]
    start: Option<String>,

    /// Feasibility tolerance (default: exact 0 in rational mode, 1e-9 in
    /// float mode)
    #[arg(long)]
    tol: Option<String>,

    /// Iteration/pivot budget (default: m+5 for lap, 200 for simplex,
    /// 50 for affine)
    #[arg(long)]
    max_iters: Option<usize>,

    /// Write a deterministic run trace to this path
    #[arg(long)]
    trace: Option<PathBuf>,

    /// Big-M weight for the affine-scaling artificial column
    #[arg(long, default_value_t = 1e4)]
    big_m: f64,

    /// Affine-scaling step fraction
    #[arg(long, default_value_t = 0.997)]
    beta: f64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", args.input.display()),
    })?;
    let settings = Settings {
        method: args.method,
        arithmetic: args.arithmetic,
        start: args.start.clone(),
        tol: args.tol.clone(),
        max_iters: args.max_iters,
        big_m: args.big_m,
        beta: args.beta,
        want_trace: args.trace.is_some(),
    };
    let outcome = run::run(&text, &settings)?;
    print!("{}", outcome.report);
    if let (Some(path), Some(content)) = (&args.trace, &outcome.trace) {
        std::fs::write(path, content).map_err(|e| CliError {
            code: EXIT_PARSE,
            message: format!("cannot write trace {}: {e}", path.display()),
        })?;
    }
    Ok(outcome.code)
}
