use thiserror::Error;

/// Errors raised by the library. Mathematical negatives (an action that is
/// not group-type, a subring that is not separable, ...) are ordinary return
/// values; this type covers broken preconditions and internal inconsistencies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not a subgroup of the automorphism group")]
    NotASubgroup,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("solution space is not block-expressible: {0}")]
    NotBlockExpressible(String),
    #[error("size guard exceeded: n = {n} > {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("group-type witness required: {0}")]
    GroupTypeWitnessRequired(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
