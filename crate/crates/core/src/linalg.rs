//! Dense vectors and matrices over a [`Scalar`], plus the elimination
//! kernels every solver leans on: Gauss-Jordan inversion, square solves,
//! and greedy independent-column selection.
//!
//! Values are immutable after construction; operations allocate fresh
//! results, so everything here is safe to share across threads.

use std::fmt;
use std::ops::Index;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("matrix shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular (pivot exhaustion at column {column})")]
    Singular { column: usize },
    #[error("non-finite value produced (numerical failure)")]
    NonFinite,
}

/// Fixed-length column of scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    entries: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Vector { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Vector {
            entries: vec![S::zero(); len],
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector {
            entries: values.iter().map(|&v| S::from_int(v)).collect(),
        }
    }

    /// Standard basis vector `e_i` (0-based) in dimension `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.entries[i] = S::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.entries.iter()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    /// Inner product `Σ u_i v_i`.
    pub fn inner(&self, other: &Self) -> Result<S, LinalgError> {
        if self.len() != other.len() {
            return Err(LinalgError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .iter()
            .zip(other.iter())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.len() != other.len() {
            return Err(LinalgError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Vector::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.len() != other.len() {
            return Err(LinalgError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Vector::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn scale(&self, factor: &S) -> Self {
        Vector::new(self.iter().map(|a| a.clone() * factor.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector::new(self.iter().map(|a| -a.clone()).collect())
    }

    /// Maximum absolute entry; zero for the empty vector. Exact-friendly
    /// stand-in for a norm (no square roots involved).
    pub fn max_abs(&self) -> S {
        self.iter().fold(S::zero(), |acc, v| {
            let a = v.abs();
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.entries[i]
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch {
                left: (r, c),
                right: (r, rows.iter().map(|row| row.len()).max().unwrap_or(0)),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| S::from_int(v)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn from_columns(columns: &[Vector<S>]) -> Result<Self, LinalgError> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vector::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(LinalgError::LengthMismatch {
                left: r,
                right: columns.iter().map(Vector::len).max().unwrap_or(0),
            });
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, col[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector<S> {
        Vector::new(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Result<Vector<S>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::LengthMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(S::zero(), |acc, j| {
                        acc + self.get(i, j).clone() * v[j].clone()
                    })
                })
                .collect(),
        ))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    ///
    /// Exact mode pivots on the first nonzero entry; float mode uses
    /// partial pivoting with a scale-relative singularity threshold of
    /// `1e-12` times the largest initial magnitude. A singular result
    /// signals a dependent column set to callers.
    pub fn gauss_jordan_inverse(&self) -> Result<Self, LinalgError> {
        let n = self.require_square()?;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        eliminate(&mut aug, n, pivot_threshold(self))?;
        if !S::EXACT && !aug.is_finite() {
            return Err(LinalgError::NonFinite);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `A x = rhs` for square `A` by elimination on `[A | rhs]`.
    pub fn solve(&self, rhs: &Vector<S>) -> Result<Vector<S>, LinalgError> {
        let n = self.require_square()?;
        if rhs.len() != n {
            return Err(LinalgError::LengthMismatch {
                left: n,
                right: rhs.len(),
            });
        }
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, rhs[i].clone());
        }
        eliminate(&mut aug, n, pivot_threshold(self))?;
        if !S::EXACT && !aug.is_finite() {
            return Err(LinalgError::NonFinite);
        }
        Ok(Vector::new((0..n).map(|i| aug.get(i, n).clone()).collect()))
    }

    /// Greedy left-to-right selection of a maximal independent column
    /// subset. Float mode accepts a pivot only above `tol`; exact mode
    /// requires an exact nonzero. The selection is deterministic.
    pub fn independent_columns(&self, tol: &S) -> Vec<usize> {
        let mut kept = Vec::new();
        // (reduced column, its pivot row); pivot entries normalized to 1
        let mut basis: Vec<(Vec<S>, usize)> = Vec::new();
        let mut used_rows = vec![false; self.rows];
        for j in 0..self.cols {
            let mut v: Vec<S> = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
            for (w, prow) in &basis {
                let factor = v[*prow].clone();
                if !factor.is_zero() {
                    for (vi, wi) in v.iter_mut().zip(w.iter()) {
                        *vi = vi.clone() - factor.clone() * wi.clone();
                    }
                }
            }
            let pivot_row = if S::EXACT {
                (0..self.rows).find(|&i| !used_rows[i] && !v[i].is_zero())
            } else {
                (0..self.rows)
                    .filter(|&i| !used_rows[i])
                    .max_by(|&a, &b| {
                        v[a].abs()
                            .partial_cmp(&v[b].abs())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
                    .filter(|&i| v[i].abs() > *tol)
            };
            if let Some(p) = pivot_row {
                let pivot = v[p].clone();
                for vi in v.iter_mut() {
                    *vi = vi.clone() / pivot.clone();
                }
                used_rows[p] = true;
                basis.push((v, p));
                kept.push(j);
            }
        }
        kept
    }

    fn require_square(&self) -> Result<usize, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (self.cols, self.rows),
            });
        }
        Ok(self.rows)
    }
}

fn pivot_threshold<S: Scalar>(m: &Matrix<S>) -> S {
    if S::EXACT {
        S::zero()
    } else {
        let scale = m.data.iter().fold(S::one(), |acc, v| {
            let a = v.abs();
            if a > acc {
                a
            } else {
                acc
            }
        });
        S::from_f64_lossy(1e-12) * scale
    }
}

/// In-place Gauss-Jordan on the first `n` columns of an augmented matrix.
fn eliminate<S: Scalar>(aug: &mut Matrix<S>, n: usize, threshold: S) -> Result<(), LinalgError> {
    let width = aug.cols();
    for col in 0..n {
        let pivot_row = if S::EXACT {
            (col..n).find(|&r| !aug.get(r, col).is_zero())
        } else {
            (col..n)
                .max_by(|&a, &b| {
                    aug.get(a, col)
                        .abs()
                        .partial_cmp(&aug.get(b, col).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .filter(|&r| aug.get(r, col).abs() > threshold)
        };
        let pivot_row = pivot_row.ok_or(LinalgError::Singular { column: col })?;
        if pivot_row != col {
            for j in 0..width {
                let a = aug.get(col, j).clone();
                let b = aug.get(pivot_row, j).clone();
                aug.set(col, j, b);
                aug.set(pivot_row, j, a);
            }
        }
        let pivot = aug.get(col, col).clone();
        for j in 0..width {
            aug.set(col, j, aug.get(col, j).clone() / pivot.clone());
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = aug.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..width {
                let updated = aug.get(r, j).clone() - factor.clone() * aug.get(col, j).clone();
                aug.set(r, j, updated);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn rv(values: &[i64]) -> Vector<Rational> {
        Vector::from_ints(values)
    }

    fn rq(s: &str) -> Rational {
        Rational::parse_number(s).unwrap()
    }

    #[test]
    fn inner_examples() {
        // t4 numerator in the worked descent: (tau4, P0)
        let u = rv(&[-1, 1, 1, 0, 0]);
        let v = rv(&[7, 4, 7, 6, 5]);
        assert_eq!(u.inner(&v).unwrap(), rq("4"));

        let z = Vector::<Rational>::zeros(5);
        assert_eq!(z.inner(&v).unwrap(), rq("0"));

        let ones = rv(&[1, 1, 1, 1, 1]);
        let p2 = Vector::new(vec![rq("0"), rq("33/13"), rq("6/13"), rq("0"), rq("21/13")]);
        assert_eq!(ones.inner(&p2).unwrap(), rq("60/13"));
    }

    #[test]
    fn inner_length_mismatch() {
        let u = rv(&[1, 2]);
        let v = rv(&[1, 2, 3]);
        assert!(matches!(
            u.inner(&v),
            Err(LinalgError::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn matmul_blocker_gram_matrices() {
        // columns tau4, tau9 of the worked instance
        let a = Matrix::<Rational>::from_int_rows(&[
            &[-1, 0],
            &[1, 0],
            &[1, 0],
            &[0, 1],
            &[0, 0],
        ]);
        let b = a.transpose().matmul(&a).unwrap();
        assert_eq!(b, Matrix::from_int_rows(&[&[3, 0], &[0, 1]]));

        // columns tau4, tau9, tau6
        let a3 = Matrix::<Rational>::from_int_rows(&[
            &[-1, 0, 1],
            &[1, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 0],
        ]);
        let b3 = a3.transpose().matmul(&a3).unwrap();
        assert_eq!(
            b3,
            Matrix::from_int_rows(&[&[3, 0, -1], &[0, 1, 0], &[-1, 0, 1]])
        );

        let id = Matrix::<Rational>::identity(3);
        assert_eq!(id.matmul(&b3).unwrap(), b3);

        let bad = Matrix::<Rational>::zeros(2, 3).matmul(&Matrix::zeros(2, 3));
        assert!(matches!(bad, Err(LinalgError::ShapeMismatch { .. })));
    }

    #[test]
    fn gauss_jordan_examples() {
        let b = Matrix::<Rational>::from_int_rows(&[&[3, 0], &[0, 1]]);
        let inv = b.gauss_jordan_inverse().unwrap();
        let expected = Matrix::from_rows(vec![
            vec![rq("1/3"), rq("0")],
            vec![rq("0"), rq("1")],
        ])
        .unwrap();
        assert_eq!(inv, expected);

        let b3 = Matrix::<Rational>::from_int_rows(&[&[3, 0, -1], &[0, 1, 0], &[-1, 0, 1]]);
        let inv3 = b3.gauss_jordan_inverse().unwrap();
        let expected3 = Matrix::from_rows(vec![
            vec![rq("1/2"), rq("0"), rq("1/2")],
            vec![rq("0"), rq("1"), rq("0")],
            vec![rq("1/2"), rq("0"), rq("3/2")],
        ])
        .unwrap();
        assert_eq!(inv3, expected3);

        let id = Matrix::<Rational>::identity(4);
        assert_eq!(id.gauss_jordan_inverse().unwrap(), id);

        let singular = Matrix::<Rational>::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            singular.gauss_jordan_inverse(),
            Err(LinalgError::Singular { .. })
        ));
    }

    #[test]
    fn independent_columns_examples() {
        // e1, e2, e1+e2
        let m = Matrix::<Rational>::from_int_rows(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 0]]);
        assert_eq!(m.independent_columns(&rq("0")), vec![0, 1]);

        // tau4, tau9, tau6 are independent
        let a3 = Matrix::<Rational>::from_int_rows(&[
            &[-1, 0, 1],
            &[1, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 0],
        ]);
        assert_eq!(a3.independent_columns(&rq("0")), vec![0, 1, 2]);

        let zero = Matrix::<Rational>::zeros(3, 1);
        assert!(zero.independent_columns(&rq("0")).is_empty());

        let empty = Matrix::<Rational>::zeros(3, 0);
        assert!(empty.independent_columns(&rq("0")).is_empty());
    }

    #[test]
    fn float_mode_uses_partial_pivoting() {
        let m = Matrix::<f64>::from_rows(vec![vec![1e-13, 1.0], vec![1.0, 1.0]]).unwrap();
        let inv = m.gauss_jordan_inverse().unwrap();
        let prod = m.matmul(&inv).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j) - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn solve_square_system() {
        let m = Matrix::<Rational>::from_int_rows(&[&[2, 1], &[1, 3]]);
        let rhs = rv(&[5, 10]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), rhs);
    }

    prop_compose! {
        fn small_square(max_dim: usize)(n in 1..=max_dim)(
            entries in prop::collection::vec(-9i64..=9, n * n),
            n in Just(n),
        ) -> Matrix<Rational> {
            Matrix::from_rows(
                entries.chunks(n).map(|row| row.iter().map(|&v| Rational::from_int(v)).collect()).collect()
            ).unwrap()
        }
    }

    proptest! {
        #[test]
        fn rational_inverse_is_exact(m in small_square(4)) {
            if let Ok(inv) = m.gauss_jordan_inverse() {
                prop_assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(m.rows()));
                prop_assert_eq!(inv.matmul(&m).unwrap(), Matrix::identity(m.rows()));
            }
        }

        #[test]
        fn float_agrees_with_rational_on_well_conditioned(
            entries in prop::collection::vec(-9i64..=9, 25)
        ) {
            let n = 5;
            let m = Matrix::from_rows(
                entries.chunks(n)
                    .map(|row| row.iter().map(|&v| Rational::from_int(v)).collect())
                    .collect(),
            ).unwrap();
            let inv = match m.gauss_jordan_inverse() {
                Ok(inv) => inv,
                Err(_) => return Ok(()),
            };
            // condition estimate from the exact inverse
            let norm = |mat: &Matrix<Rational>| -> f64 {
                (0..mat.rows())
                    .map(|i| mat.row(i).iter().map(|v| Scalar::abs(v).to_f64()).sum::<f64>())
                    .fold(0.0, f64::max)
            };
            prop_assume!(norm(&m) * norm(&inv) < 1e6);
            let mf = Matrix::<f64>::from_rows(
                (0..n).map(|i| m.row(i).iter().map(|v| v.to_f64()).collect()).collect()
            ).unwrap();
            let invf = mf.gauss_jordan_inverse().unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert!((invf.get(i, j) - inv.get(i, j).to_f64()).abs() < 1e-8);
                }
            }
        }

        #[test]
        fn inner_is_symmetric_and_bilinear(
            u in prop::collection::vec(-9i64..=9, 4),
            v in prop::collection::vec(-9i64..=9, 4),
            w in prop::collection::vec(-9i64..=9, 4),
            alpha in -5i64..=5,
            beta in -5i64..=5,
        ) {
            let u = Vector::<Rational>::from_ints(&u);
            let v = Vector::<Rational>::from_ints(&v);
            let w = Vector::<Rational>::from_ints(&w);
            let a = Rational::from_int(alpha);
            let b = Rational::from_int(beta);
            prop_assert_eq!(u.inner(&v).unwrap(), v.inner(&u).unwrap());
            let lhs = u.scale(&a).add(&v.scale(&b)).unwrap().inner(&w).unwrap();
            let rhs = a * u.inner(&w).unwrap() + b * v.inner(&w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
