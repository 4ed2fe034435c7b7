//! Projection onto the intersection subspace of the active blockers.
//!
//! For blocker normals stacked as columns of `A` (m x k, full column
//! rank), `H = A (A'A)^-1 A'` projects onto the span of the normals, so
//! `g - Hg` is the component of `g` lying inside every blocking
//! hyperplane. `H` is idempotent, fixes each normal, and annihilates
//! anything orthogonal to all of them. A dependent normal set is first
//! reduced to a maximal independent subset; that leaves the projection
//! unchanged.

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectionError {
    #[error("no normals supplied")]
    Empty,
    #[error("all supplied normals are zero (or below tolerance)")]
    AllZero,
    #[error("normal {index} has length {len}, expected {expected}")]
    LengthMismatch {
        index: usize,
        len: usize,
        expected: usize,
    },
    #[error("zero normal")]
    ZeroNormal,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Projector built from a set of blocker normals. `H` is materialized
/// as a full m x m matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HatProjector<S> {
    normals: Matrix<S>,
    b_inv: Matrix<S>,
    hat: Matrix<S>,
    sigma: Vec<usize>,
    dropped: Vec<usize>,
}

impl<S: Scalar> HatProjector<S> {
    /// Builds the projector over `normals`, labelled by the parallel
    /// slice `indices` (1-based facet indices). Dependent normals are
    /// dropped, keeping a maximal independent subset; the dropped labels
    /// are recorded.
    pub fn build(
        normals: &[Vector<S>],
        indices: &[usize],
        tol: &S,
    ) -> Result<Self, ProjectionError> {
        if normals.is_empty() {
            return Err(ProjectionError::Empty);
        }
        assert_eq!(normals.len(), indices.len(), "one index per normal");
        let m = normals[0].len();
        for (k, v) in normals.iter().enumerate() {
            if v.len() != m {
                return Err(ProjectionError::LengthMismatch {
                    index: indices[k],
                    len: v.len(),
                    expected: m,
                });
            }
        }
        let stacked = Matrix::from_columns(normals)?;
        let kept = stacked.independent_columns(tol);
        if kept.is_empty() {
            return Err(ProjectionError::AllZero);
        }
        let dropped = (0..normals.len())
            .filter(|k| !kept.contains(k))
            .map(|k| indices[k])
            .collect();
        let sigma: Vec<usize> = kept.iter().map(|&k| indices[k]).collect();
        let columns: Vec<Vector<S>> = kept.iter().map(|&k| normals[k].clone()).collect();
        let a = Matrix::from_columns(&columns)?;
        let b = a.transpose().matmul(&a)?;
        let b_inv = b.gauss_jordan_inverse()?;
        let hat = a.matmul(&b_inv)?.matmul(&a.transpose())?;
        if !S::EXACT && !hat.is_finite() {
            return Err(ProjectionError::Linalg(LinalgError::NonFinite));
        }
        Ok(HatProjector {
            normals: a,
            b_inv,
            hat,
            sigma,
            dropped,
        })
    }

    /// `d = g - H g`, the projection of `g` into the intersection of the
    /// blocking hyperplanes. Orthogonal to every blocker normal.
    pub fn project(&self, g: &Vector<S>) -> Vector<S> {
        let hg = self.hat.mul_vec(g).expect("goal dimension");
        g.sub(&hg).expect("goal dimension")
    }

    pub fn hat(&self) -> &Matrix<S> {
        &self.hat
    }

    pub fn b_inv(&self) -> &Matrix<S> {
        &self.b_inv
    }

    pub fn normals(&self) -> &Matrix<S> {
        &self.normals
    }

    /// 1-based facet indices of the kept (independent) normals.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Indices dropped as linearly dependent on earlier normals.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    /// Number of independent blocker normals.
    pub fn rank(&self) -> usize {
        self.normals.cols()
    }

    pub fn dim(&self) -> usize {
        self.normals.rows()
    }

    /// True when the blockers span the whole space: `H = I` and every
    /// projected direction is zero. The point is pinned at a vertex.
    pub fn spans_space(&self) -> bool {
        self.rank() == self.dim()
    }
}

/// Single-blocker projection `g - tau (g,tau)/(tau,tau)`.
pub fn project_single<S: Scalar>(
    tau: &Vector<S>,
    g: &Vector<S>,
) -> Result<Vector<S>, ProjectionError> {
    let tt = tau.inner(tau)?;
    if tt.is_zero() {
        return Err(ProjectionError::ZeroNormal);
    }
    let coeff = g.inner(tau)? / tt;
    g.sub(&tau.scale(&coeff)).map_err(ProjectionError::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn rq(s: &str) -> Rational {
        Rational::parse_number(s).unwrap()
    }

    fn rv(values: &[i64]) -> Vector<Rational> {
        Vector::from_ints(values)
    }

    fn tau4() -> Vector<Rational> {
        rv(&[-1, 1, 1, 0, 0])
    }

    fn tau9() -> Vector<Rational> {
        Vector::unit(5, 3)
    }

    fn tau6() -> Vector<Rational> {
        Vector::unit(5, 0)
    }

    fn goal() -> Vector<Rational> {
        rv(&[-4, -1, -4, -6, -2])
    }

    fn zero() -> Rational {
        Rational::from_int(0)
    }

    #[test]
    fn hat_over_two_blockers() {
        let hp = HatProjector::build(&[tau4(), tau9()], &[4, 9], &zero()).unwrap();
        let want = Matrix::from_rows(vec![
            vec![rq("1/3"), rq("-1/3"), rq("-1/3"), rq("0"), rq("0")],
            vec![rq("-1/3"), rq("1/3"), rq("1/3"), rq("0"), rq("0")],
            vec![rq("-1/3"), rq("1/3"), rq("1/3"), rq("0"), rq("0")],
            vec![rq("0"), rq("0"), rq("0"), rq("1"), rq("0")],
            vec![rq("0"), rq("0"), rq("0"), rq("0"), rq("0")],
        ])
        .unwrap();
        assert_eq!(hp.hat(), &want);
        assert_eq!(hp.sigma(), &[4, 9]);
        assert!(hp.dropped().is_empty());
        assert_eq!(hp.rank(), 2);
    }

    #[test]
    fn hat_over_three_blockers() {
        let hp = HatProjector::build(&[tau4(), tau9(), tau6()], &[4, 9, 6], &zero()).unwrap();
        let want = Matrix::from_rows(vec![
            vec![rq("1"), rq("0"), rq("0"), rq("0"), rq("0")],
            vec![rq("0"), rq("1/2"), rq("1/2"), rq("0"), rq("0")],
            vec![rq("0"), rq("1/2"), rq("1/2"), rq("0"), rq("0")],
            vec![rq("0"), rq("0"), rq("0"), rq("1"), rq("0")],
            vec![rq("0"), rq("0"), rq("0"), rq("0"), rq("0")],
        ])
        .unwrap();
        assert_eq!(hp.hat(), &want);
    }

    #[test]
    fn hat_single_axis() {
        let hp = HatProjector::build(&[Vector::<Rational>::unit(3, 0)], &[1], &zero()).unwrap();
        let mut want = Matrix::zeros(3, 3);
        want.set(0, 0, Rational::from_int(1));
        assert_eq!(hp.hat(), &want);
    }

    #[test]
    fn dependent_normals_are_dropped() {
        let e1 = Vector::<Rational>::unit(3, 0);
        let e2 = Vector::<Rational>::unit(3, 1);
        let sum = e1.add(&e2).unwrap();
        let hp = HatProjector::build(&[e1, e2, sum], &[1, 2, 3], &zero()).unwrap();
        assert_eq!(hp.sigma(), &[1, 2]);
        assert_eq!(hp.dropped(), &[3]);
        assert_eq!(hp.rank(), 2);
        assert!(!hp.spans_space());
    }

    #[test]
    fn all_zero_normals_error() {
        let z = Vector::<Rational>::zeros(3);
        assert_eq!(
            HatProjector::build(&[z], &[1], &zero()).unwrap_err(),
            ProjectionError::AllZero
        );
    }

    #[test]
    fn project_directions_from_descent() {
        let hp = HatProjector::build(&[tau4(), tau9()], &[4, 9], &zero()).unwrap();
        let d = hp.project(&goal());
        let want = Vector::new(vec![rq("-13/3"), rq("-2/3"), rq("-11/3"), rq("0"), rq("-2")]);
        assert_eq!(d, want);

        let hp3 = HatProjector::build(&[tau4(), tau9(), tau6()], &[4, 9, 6], &zero()).unwrap();
        let d3 = hp3.project(&goal());
        let want3 = Vector::new(vec![rq("0"), rq("3/2"), rq("-3/2"), rq("0"), rq("-2")]);
        assert_eq!(d3, want3);
    }

    #[test]
    fn orthogonal_goal_passes_through() {
        let hp = HatProjector::build(&[Vector::<Rational>::unit(3, 2)], &[1], &zero()).unwrap();
        let g = rv(&[5, -7, 0]);
        assert_eq!(hp.project(&g), g);
    }

    #[test]
    fn project_single_examples() {
        let d = project_single(&tau4(), &goal()).unwrap();
        let want = Vector::new(vec![rq("-13/3"), rq("-2/3"), rq("-11/3"), rq("-6"), rq("-2")]);
        assert_eq!(d, want);

        let e1 = Vector::<Rational>::unit(2, 0);
        let g = rv(&[5, 7]);
        assert_eq!(project_single(&e1, &g).unwrap(), rv(&[0, 7]));

        let tau = rv(&[2, -6]);
        let parallel = rv(&[1, -3]);
        assert_eq!(
            project_single(&tau, &parallel).unwrap(),
            Vector::zeros(2)
        );

        assert_eq!(
            project_single(&Vector::<Rational>::zeros(2), &g).unwrap_err(),
            ProjectionError::ZeroNormal
        );
    }

    /// Random independent normal sets: k columns in R^m with small
    /// integer entries, rejecting rank-deficient draws.
    pub(crate) fn independent_normals(
    ) -> impl Strategy<Value = (Vec<Vector<Rational>>, Vec<i64>)> {
        (2usize..=5)
            .prop_flat_map(|m| {
                (1usize..=m).prop_flat_map(move |k| {
                    (
                        prop::collection::vec(-4i64..=4, m * k),
                        Just(m),
                        Just(k),
                        prop::collection::vec(-9i64..=9, m),
                    )
                })
            })
            .prop_filter_map("need full column rank", |(entries, m, k, g)| {
                let cols: Vec<Vector<Rational>> = (0..k)
                    .map(|j| Vector::from_ints(&entries[j * m..(j + 1) * m]))
                    .collect();
                let stacked = Matrix::from_columns(&cols).unwrap();
                (stacked.independent_columns(&Rational::from_int(0)).len() == k)
                    .then_some((cols, g))
            })
    }

    proptest! {
        #[test]
        fn idempotent_and_fixes_normals((normals, g) in independent_normals()) {
            let indices: Vec<usize> = (1..=normals.len()).collect();
            let hp = HatProjector::build(&normals, &indices, &zero()).unwrap();
            let h = hp.hat();
            prop_assert_eq!(&h.matmul(h).unwrap(), h);
            for tau in &normals {
                prop_assert_eq!(&h.mul_vec(tau).unwrap(), tau);
            }
            let g = Vector::from_ints(&g);
            let d = hp.project(&g);
            for tau in &normals {
                prop_assert!(Scalar::is_zero(&tau.inner(&d).unwrap()));
            }
            // complementarity and operation-level idempotence
            let hg = h.mul_vec(&g).unwrap();
            prop_assert_eq!(d.add(&hg).unwrap(), g);
            prop_assert_eq!(hp.project(&d.clone()), d);
        }

        #[test]
        fn single_normal_matches_closed_form((normals, g) in independent_normals()) {
            let tau = normals[0].clone();
            let g = Vector::from_ints(&g);
            let hp = HatProjector::build(std::slice::from_ref(&tau), &[1], &zero()).unwrap();
            prop_assert_eq!(hp.project(&g), project_single(&tau, &g).unwrap());
        }

        #[test]
        fn annihilates_orthogonal_complement((normals, g) in independent_normals()) {
            let indices: Vec<usize> = (1..=normals.len()).collect();
            let hp = HatProjector::build(&normals, &indices, &zero()).unwrap();
            let g = Vector::from_ints(&g);
            // g - Hg is orthogonal to all normals, so H must send it to zero
            let d = hp.project(&g);
            let hd = hp.hat().mul_vec(&d).unwrap();
            prop_assert_eq!(hd, Vector::zeros(d.len()));
        }
    }
}
