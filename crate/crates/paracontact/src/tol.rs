//! Central tolerances.
//!
//! Inputs of interest are small integer or rational frame components, so every
//! identity in the crate is a low-degree polynomial evaluated in f64. The
//! thresholds below leave several digits of headroom over accumulated rounding
//! while staying far below any genuine nonzero value.

/// Absolute tolerance for linear-algebra checks (inverse residuals, symmetry).
pub const TOL_LIN: f64 = 1e-10;

/// Absolute tolerance on structure-axiom and connection residuals.
pub const TOL_STRUCT: f64 = 1e-9;

/// Relative tolerance for class membership and predicate decisions,
/// scaled by `max(1, |F|)`.
pub const TOL_CLASS: f64 = 1e-9;

/// Threshold on singular values in the numerical-rank oracle,
/// scaled by `max(1, s_max)`.
pub const TOL_RANK: f64 = 1e-8;
