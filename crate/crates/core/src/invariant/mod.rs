//! Chern geometry of invariant Hermitian metrics on a [`CoframeAlgebra`].
//!
//! Everything is computed in the coframe: the connection is determined by
//! its (0,1)-part, which cancels the (1,1)-part of dφ, together with metric
//! compatibility. Ricci forms are written Ric = √−1 a_{ij̄} φ^i∧φ̄^j and the
//! matrices `a` are what the functions here return.
//!
//! [`CoframeAlgebra`]: crate::forms::CoframeAlgebra

mod chern_weil;
mod connection;
mod lee;
mod metric;
mod ricci;
pub mod scan;

pub use chern_weil::{bogomolov_lubke, chern_weil, ChernForms};
pub use connection::{chern_connection, chern_curvature, torsion, ConnectionForms, Curvature, CurvatureTensor, Torsion};
pub use lee::{gauduchon_degree_invariant, is_gauduchon, lee_form, GauduchonCheck, LeeForm};
pub use metric::{form_matrix, matrix_form, HermitianMetric, SurfaceMetricParams};
pub use ricci::{
    einstein_residual, einstein_residual_from, ricci, ricci_form, scalar_chern, scalar_third, trace_with,
    EinsteinMode, EinsteinResidual, RicciKind, RicciReport,
};
pub use scan::{scan, Certificate, GridSpec, ScanPoint, ScanReport};
