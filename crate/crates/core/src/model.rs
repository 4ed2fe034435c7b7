//! Problem representation and ingestion.
//!
//! The primal is `max { c'x | Ax <= b, x >= 0 }`. Its dual lives in
//! `R^m` and is cut by `n + m` facets: one per original column of `A`
//! (normal = the column, offset = the cost entry) followed by the slack
//! facets `e_i` with offset 0, which together encode `y'A >= c, y >= 0`.
//!
//! Problem files are line oriented UTF-8 text, one directive per line,
//! `#` starting a comment:
//!
//! ```text
//! dim <m> <n>
//! A              (followed by m lines of n numbers)
//! b <m numbers>
//! c <n numbers>
//! start <m numbers>    (optional dual start point)
//! ```
//!
//! Numbers are integers, decimals, or rationals `p/q`, with an optional
//! leading sign; `.` is the only decimal separator. The format carries
//! rationals losslessly, which matters because solution values such as
//! `33/13` do not round-trip through floats.

use thiserror::Error;

use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// `max { c'x | Ax <= b, x >= 0 }` with `A` of shape m x n.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalProblem<S> {
    a: Matrix<S>,
    b: Vector<S>,
    c: Vector<S>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("shape mismatch: A is {rows}x{cols}, b has {b_len}, c has {c_len}")]
    Shape {
        rows: usize,
        cols: usize,
        b_len: usize,
        c_len: usize,
    },
    #[error("column {column} of A is zero; its facet would have a zero normal")]
    ZeroColumn { column: usize },
    #[error("no natural slack basis: b[{row}] is negative")]
    NegativeRhs { row: usize },
}

impl<S: Scalar> PrimalProblem<S> {
    pub fn new(a: Matrix<S>, b: Vector<S>, c: Vector<S>) -> Result<Self, ModelError> {
        if a.rows() != b.len() || a.cols() != c.len() || a.rows() == 0 || a.cols() == 0 {
            return Err(ModelError::Shape {
                rows: a.rows(),
                cols: a.cols(),
                b_len: b.len(),
                c_len: c.len(),
            });
        }
        for j in 0..a.cols() {
            if (0..a.rows()).all(|i| a.get(i, j).is_zero()) {
                return Err(ModelError::ZeroColumn { column: j + 1 });
            }
        }
        Ok(PrimalProblem { a, b, c })
    }

    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn b(&self) -> &Vector<S> {
        &self.b
    }

    pub fn c(&self) -> &Vector<S> {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }
}

/// One dual-space constraint hyperplane with accept zone
/// `(tau, y) >= c`. `index` is the 1-based position in `1..=n+m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<S> {
    pub tau: Vector<S>,
    pub offset: S,
    pub index: usize,
}

impl<S: Scalar> Facet<S> {
    /// Signed slack `(tau, y) - c`; nonnegative on the accept side.
    pub fn slack(&self, y: &Vector<S>) -> S {
        self.tau.inner(y).expect("facet dimension") - self.offset.clone()
    }
}

/// The dual instance: minimize `(b, y)` over the facet intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct DualProblem<S> {
    pub objective: Vector<S>,
    pub facets: Vec<Facet<S>>,
    pub m: usize,
    pub n: usize,
}

impl<S: Scalar> DualProblem<S> {
    /// Facet by 1-based index.
    pub fn facet(&self, j: usize) -> &Facet<S> {
        &self.facets[j - 1]
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }
}

/// Builds the n + m facet list in column order: original columns first,
/// then the slack unit facets with offset 0.
pub fn to_dual<S: Scalar>(p: &PrimalProblem<S>) -> DualProblem<S> {
    let (m, n) = (p.m(), p.n());
    let mut facets = Vec::with_capacity(n + m);
    for j in 0..n {
        facets.push(Facet {
            tau: p.a.column(j),
            offset: p.c[j].clone(),
            index: j + 1,
        });
    }
    for i in 0..m {
        facets.push(Facet {
            tau: Vector::unit(m, i),
            offset: S::zero(),
            index: n + i + 1,
        });
    }
    DualProblem {
        objective: p.b.clone(),
        facets,
        m,
        n,
    }
}

/// True iff `(tau_j, y) >= c_j - tol` for every facet. The slack facets
/// encode `y >= 0`.
pub fn is_dual_feasible<S: Scalar>(dp: &DualProblem<S>, y: &Vector<S>, tol: &S) -> bool {
    dp.facets
        .iter()
        .all(|f| f.slack(y) + tol.clone() >= S::zero())
}

/// Full simplex tableau: m constraint rows `[A | I | b]` over the
/// reduced-cost row `[-c | 0 | 0]`, with `basis[r]` naming the 0-based
/// column currently basic in row `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexTableau<S> {
    pub grid: Matrix<S>,
    pub basis: Vec<usize>,
}

impl<S: Scalar> SimplexTableau<S> {
    pub fn m(&self) -> usize {
        self.grid.rows() - 1
    }

    pub fn n(&self) -> usize {
        self.grid.cols() - 1 - self.m()
    }

    pub fn rhs(&self, row: usize) -> &S {
        self.grid.get(row, self.grid.cols() - 1)
    }

    /// Current objective value `c'x` of the basic solution.
    pub fn objective(&self) -> S {
        self.rhs(self.m()).clone()
    }
}

/// Initial tableau with the natural slack basis `x = 0, s = b`.
/// Requires `b >= 0`; a negative entry has no slack-feasible start.
pub fn build_tableau<S: Scalar>(p: &PrimalProblem<S>) -> Result<SimplexTableau<S>, ModelError> {
    let (m, n) = (p.m(), p.n());
    for i in 0..m {
        if p.b[i] < S::zero() {
            return Err(ModelError::NegativeRhs { row: i + 1 });
        }
    }
    let mut grid = Matrix::zeros(m + 1, n + m + 1);
    for i in 0..m {
        for j in 0..n {
            grid.set(i, j, p.a.get(i, j).clone());
        }
        grid.set(i, n + i, S::one());
        grid.set(i, n + m, p.b[i].clone());
    }
    for j in 0..n {
        grid.set(m, j, -p.c[j].clone());
    }
    Ok(SimplexTableau {
        grid,
        basis: (n..n + m).collect(),
    })
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed directive: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: invalid number {token:?}")]
    InvalidNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} values for {what}, found {found}")]
    DimensionMismatch {
        line: usize,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate directive {directive:?}")]
    Duplicate { line: usize, directive: String },
    #[error("missing directive {directive:?}")]
    Missing { directive: &'static str },
    #[error("line {line}: {source}")]
    Model { line: usize, source: ModelError },
}

/// Parsed problem plus the optional dual start point.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedProblem<S> {
    pub problem: PrimalProblem<S>,
    pub start: Option<Vector<S>>,
}

fn parse_values<S: Scalar>(
    tokens: &[&str],
    line: usize,
    what: &'static str,
    expected: usize,
) -> Result<Vec<S>, ParseError> {
    if tokens.len() != expected {
        return Err(ParseError::DimensionMismatch {
            line,
            what,
            expected,
            found: tokens.len(),
        });
    }
    tokens
        .iter()
        .map(|t| {
            S::parse_number(t).ok_or_else(|| ParseError::InvalidNumber {
                line,
                token: (*t).to_string(),
            })
        })
        .collect()
}

/// Parses the line-oriented problem format described in the module docs.
pub fn parse_problem<S: Scalar>(text: &str) -> Result<ParsedProblem<S>, ParseError> {
    // (1-based line number, tokens) with comments and blanks stripped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            (i + 1, body.split_whitespace().collect::<Vec<_>>())
        })
        .filter(|(_, tokens)| !tokens.is_empty());

    let (dim_line, dim_tokens) = lines.next().ok_or(ParseError::Missing { directive: "dim" })?;
    if dim_tokens[0] != "dim" || dim_tokens.len() != 3 {
        return Err(ParseError::Malformed {
            line: dim_line,
            reason: "expected `dim <m> <n>` first".into(),
        });
    }
    let parse_dim = |t: &str| -> Option<usize> {
        let v: usize = t.parse().ok()?;
        (v > 0).then_some(v)
    };
    let m = parse_dim(dim_tokens[1]).ok_or_else(|| ParseError::InvalidNumber {
        line: dim_line,
        token: dim_tokens[1].to_string(),
    })?;
    let n = parse_dim(dim_tokens[2]).ok_or_else(|| ParseError::InvalidNumber {
        line: dim_line,
        token: dim_tokens[2].to_string(),
    })?;

    let mut a_rows: Option<(usize, Vec<Vec<S>>)> = None;
    let mut b: Option<Vector<S>> = None;
    let mut c: Option<Vector<S>> = None;
    let mut start: Option<Vector<S>> = None;

    while let Some((line, tokens)) = lines.next() {
        match tokens[0] {
            "A" => {
                if a_rows.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        directive: "A".into(),
                    });
                }
                if tokens.len() != 1 {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "`A` takes no inline values; rows follow".into(),
                    });
                }
                let mut rows = Vec::with_capacity(m);
                for _ in 0..m {
                    let (row_line, row_tokens) = lines.next().ok_or(ParseError::Missing {
                        directive: "A row",
                    })?;
                    rows.push(parse_values(&row_tokens, row_line, "an A row", n)?);
                }
                a_rows = Some((line, rows));
            }
            "b" => {
                if b.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        directive: "b".into(),
                    });
                }
                b = Some(Vector::new(parse_values(&tokens[1..], line, "b", m)?));
            }
            "c" => {
                if c.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        directive: "c".into(),
                    });
                }
                c = Some(Vector::new(parse_values(&tokens[1..], line, "c", n)?));
            }
            "start" => {
                if start.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        directive: "start".into(),
                    });
                }
                start = Some(Vector::new(parse_values(&tokens[1..], line, "start", m)?));
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("unknown directive {other:?}"),
                });
            }
        }
    }

    let (a_line, rows) = a_rows.ok_or(ParseError::Missing { directive: "A" })?;
    let a = Matrix::from_rows(rows).expect("rows validated to equal length");
    let b = b.ok_or(ParseError::Missing { directive: "b" })?;
    let c = c.ok_or(ParseError::Missing { directive: "c" })?;
    let problem = PrimalProblem::new(a, b, c)
        .map_err(|source| ParseError::Model { line: a_line, source })?;
    Ok(ParsedProblem { problem, start })
}

/// Canonical serialization; `parse_problem` reparses it to an identical
/// problem.
pub fn format_problem<S: Scalar>(p: &PrimalProblem<S>, start: Option<&Vector<S>>) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {} {}\n", p.m(), p.n()));
    out.push_str("A\n");
    for i in 0..p.m() {
        out.push_str(&format!("{}\n", p.a.row_vector(i)));
    }
    out.push_str(&format!("b {}\n", p.b));
    out.push_str(&format!("c {}\n", p.c));
    if let Some(s) = start {
        out.push_str(&format!("start {}\n", s));
    }
    out
}
