use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("complex structure is not integrable: d{component} has a (0,2) part")]
    NotIntegrable { component: String },

    #[error("structure equations fail d∘d = 0 (max residual {residual:e})")]
    JacobiFailure { residual: f64 },

    #[error("metric is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("metric is not positive definite (leading minor {order} is not positive)")]
    NotPositiveDefinite { order: usize },

    #[error("metric is degenerate: det = {det:e} below threshold {threshold:e}")]
    DegenerateMetric { det: f64, threshold: f64 },

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("curvature 2-form Θ^{row}_{col} has a non-(1,1) part of size {residual:e}")]
    CurvatureNotType11 { row: usize, col: usize, residual: f64 },

    #[error("torsion is not of type (2,0) (residual {residual:e})")]
    TorsionNotType20 { residual: f64 },

    #[error("point {0:?} lies outside the chart domain")]
    OutsideDomain(Vec<f64>),

    #[error("point {0:?} is closer than the finite-difference margin to the domain boundary")]
    InsufficientMargin(Vec<f64>),

    #[error("metric is not Gauduchon (|∂∂̄ω^(n-1)| = {residual:e})")]
    NotGauduchon { residual: f64 },

    #[error("grid contains no admissible parameter points")]
    EmptyGrid,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("entry `{entry}` has no closed form for `{quantity}`")]
    UnknownQuantity { entry: String, quantity: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("{entry}: {source}")]
    Entry { entry: String, source: Box<Error> },

    #[error(transparent)]
    Yamabe(#[from] crate::yamabe::YamabeError),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn in_entry(self, entry: &str) -> Self {
        Error::Entry { entry: entry.to_string(), source: Box::new(self) }
    }
}
