use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial does not split over the active field; remaining factor: {0}")]
    NonSplitting(String),
    #[error("polynomial is not symmetric under variable permutations")]
    NotSymmetric,
    #[error("rational function has a pole at q = 0")]
    PoleAtZero,
    #[error("degenerate weight: alpha + beta = 0 in factor {0}")]
    DegenerateWeight(usize),
    #[error("evaluation at a pole: t = {0} coincides with an evaluation point")]
    EvaluationAtPole(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("leading coefficient is not the identity; cannot invert")]
    NotInvertibleLeadingTerm,
    #[error("characteristic polynomial does not split over the field: {0}")]
    EigenvalueNotInField(String),
    #[error("B_{0} does not vanish; expected zero tail beyond i = n")]
    TailNotVanishing(usize),
    #[error("instance outside desk-scale bounds: {0}")]
    OutOfDeskRange(String),
    #[error("central series zeta(x) vanishes identically")]
    ZetaVanishes,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
