//! Perturbation-bound arithmetic for the ellipsoid method.
//!
//! With `n` variables and entry bound `U`, the degenerate feasibility
//! system needs its right-hand side perturbed by `epsilon` with
//! `1/epsilon = 2(n+1)((n+1)U)^(n+1)` before a volume-based stopping
//! rule applies. The bound grows so fast that it doubles as the argument
//! against running the ellipsoid method at desk scale; computing it
//! exactly is all the method contributes here.

use num_bigint::BigUint;

/// Exact value of `2 (n+1) ((n+1) U)^(n+1)` for `n, U >= 1`.
pub fn ellipsoid_bound(n: u32, u: u32) -> BigUint {
    assert!(n >= 1 && u >= 1, "dimension and entry bound must be positive");
    let n1 = BigUint::from(n + 1);
    let base = &n1 * BigUint::from(u);
    BigUint::from(2u32) * n1 * base.pow(n + 1)
}
