//! Comparison methods and the ground-truth oracle: full-tableau simplex
//! under Bland's rule, short-step affine scaling with big-M
//! initialization, the ellipsoid perturbation-bound arithmetic, and
//! brute-force vertex enumeration in exact arithmetic.

pub mod affine;
pub mod ellipsoid;
pub mod oracle;
pub mod simplex;
