//! Numerical thresholds shared across the engine.
//!
//! Exact-mode computations ignore all of these: zero means zero.

/// Relative threshold for treating a float coefficient as zero, measured
/// against the largest coefficient of the expression it came from.
pub const REL_ZERO: f64 = 1e-12;

/// Absolute floor for the float zero test.
pub const ABS_ZERO: f64 = 1e-14;

/// Relative tolerance used by float-mode catalog verification.
pub const CATALOG_REL: f64 = 1e-9;

/// A metric is refused as degenerate when `det h < DEGENERATE_DET * (max |h_ij|)^n`.
pub const DEGENERATE_DET: f64 = 1e-10;

/// Default threshold for Einstein residuals reported by the CLI.
pub const EINSTEIN_TOL: f64 = 1e-9;

/// Zero threshold for an expression whose largest input coefficient is `scale`.
pub fn zero_threshold(scale: f64) -> f64 {
    (REL_ZERO * scale).max(ABS_ZERO)
}
