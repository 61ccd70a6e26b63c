//! Error type shared across the crate.
//!
//! Numeric payloads are carried as display strings so the error type stays
//! independent of the arithmetic mode.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A functional was evaluated against a point shorter than its truncation.
    #[error(
        "dimension mismatch: functional truncated at {functional} but point has length {point}"
    )]
    DimensionMismatch { functional: usize, point: usize },

    /// A coefficient index outside `[1, truncation]`.
    #[error("coordinate index {index} outside [1, {truncation}]")]
    IndexOutOfRange { index: usize, truncation: usize },

    /// Lookup of a constraint id that is not part of the system.
    #[error("unknown constraint id {0}")]
    UnknownId(i64),

    /// The point violates a constraint beyond the active tolerance.
    #[error("infeasible point: constraint {id} violated, slack {slack}")]
    Infeasible { id: i64, slack: String },

    /// A precondition required an extreme point.
    #[error("point is not an extreme point of the system")]
    NotExtreme,

    /// The referenced constraint is not active at the point.
    #[error("constraint {id} is not active at the point")]
    NotActive { id: i64 },

    /// The ray direction leaves the support cone at an active constraint.
    #[error("direction increases active constraint {id}; not a support-cone ray")]
    DirectionNotInCone { id: i64 },

    /// The reduced active matrix does not have a one-dimensional null space.
    #[error(
        "degenerate active set: leaving id {leaving_id} gives null-space dimension {null_dim}"
    )]
    Degenerate { leaving_id: i64, null_dim: usize },

    /// No inactive constraint blocks the edge ray.
    #[error("edge ray is unblocked{}; feasible region is unbounded along it",
            .leaving_id.map(|id| format!(" (leaving id {id})")).unwrap_or_default())]
    Unbounded { leaving_id: Option<i64> },

    /// An error raised while constructing the edge for a specific leaving id.
    #[error("edge construction failed for leaving id {leaving_id}: {source}")]
    EdgeConstruction {
        leaving_id: i64,
        #[source]
        source: Box<Error>,
    },

    /// An error raised at a specific simplex iteration.
    #[error("simplex iteration {iteration}: {source}")]
    AtIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    /// Invalid instance description.
    #[error("invalid instance: {0}")]
    Spec(String),

    /// Combinatorial budget of the brute-force oracle exceeded.
    #[error("oracle budget exceeded: {subsets} candidate subsets, limit {limit}")]
    Budget { subsets: u128, limit: u128 },

    /// The oracle found no vertices.
    #[error("vertex set is empty")]
    EmptyVertexSet,

    /// The audit sample contained no usable extreme points.
    #[error("audit sample is empty")]
    EmptySample,

    /// The operation is only defined for complete finite systems.
    #[error("operation unsupported on truncated infinite systems: {0}")]
    UnsupportedTruncated(&'static str),

    /// Index outside the valid range of a decomposition.
    #[error("partial-sum index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    /// Malformed textual input (instance files, numeric literals).
    #[error("parse error: {0}")]
    Parse(String),
}
