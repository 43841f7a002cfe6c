//! Geometry over finite fields: Jacobian smoothness, the K3 point census,
//! lines on the Pfaffian cubic, the linearization fiber, fixed-point
//! weights and generic freeness.

mod census;
mod freeness;
mod gb;
mod lines;
mod points;
mod smooth;
mod weights;

#[cfg(test)]
mod tests;

pub use census::{k3_census, CensusOptions, K3Census, Plane, WEIL_BETTI};
pub use freeness::{generic_freeness_sample, ElementFreeness, FreenessReport};
pub use gb::{buchberger, GroebnerBasis, ModPoly, DEFAULT_PAIR_BUDGET};
pub use lines::{
    line_from_surface_pair, linearization_fiber, pf_at, round_trip_point, FiberOutcome, LineOnCubic, RoundTrip,
};
pub use points::{
    normalize_projective, projective_points, random_point, reduce_family, reduce_matrix, reduce_poly,
    sample_hypersurface_points,
};
pub use smooth::{
    smoothness_check, SmoothnessOptions, SmoothnessStatus, SmoothnessVerdict, Witness, DEFAULT_EVAL_BUDGET,
    DEFAULT_POWER_BOUND,
};
pub use weights::{fixed_point_weights, FixedPointWeights};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::pfaffian::PfaffianError;
use crate::polyring::PolyError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VarietyError {
    #[error("pair budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("bad reduction: degree {degree} vanishes mod {p}")]
    BadReduction { p: u64, degree: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("span of the two planes has dimension {dim}, expected 4")]
    DegenerateSpan { dim: usize },
    #[error("solution space has dimension {dim}, expected 2")]
    UnexpectedSolutionDim { dim: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("polynomial is not semi-invariant under the diagonal element")]
    NotSemiInvariant,
    #[error("fixed point e{point} is not isolated (weight 0 in direction x{direction})")]
    NonIsolatedFixedPoint { point: usize, direction: usize },
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("too many variables: {0}")]
    TooManyVariables(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
}
