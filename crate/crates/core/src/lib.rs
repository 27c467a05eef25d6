//! Chern-connection geometry of Hermitian metrics.
//!
//! Two backends compute the same quantities. [`invariant`] works on Lie
//! groups through structure equations of an invariant coframe, with either
//! floating-point or exact rational coefficients. [`chart`] works in a
//! coordinate patch from a metric field, using forward-mode second
//! derivatives. On top of these sit the example [`catalog`], the periodic
//! Chern-Yamabe solver in [`yamabe`], and the text formats used by the CLI.

pub mod catalog;
pub mod chart;
pub mod error;
pub mod forms;
pub mod invariant;
pub mod linalg;
pub mod literal;
pub mod scalar;
pub mod structure;
pub mod tolerance;
pub mod yamabe;

pub use error::{Error, Result};
