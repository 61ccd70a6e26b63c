//! Geometric simplex method over truncated half-space systems.
//!
//! The feasible region is the intersection of countably many half-spaces
//! `phi(x) <= b`, represented at a finite truncation level `N`. On top of that
//! representation the crate provides:
//!
//! - extreme-point tests, edge lines, and the adjacent-extreme-point ratio
//!   test ([`geometry`]);
//! - Schauder-style series decompositions of feasible points along the edges
//!   out of an extreme point ([`geometry::schauder_decompose`]);
//! - a steepest-descent-edge simplex loop with trace recording and an
//!   optimality certificate ([`simplex`]);
//! - an auditor for the nine structural assumptions the method relies on,
//!   including the constants `rho`, `xi`, `nu`, `D` ([`audit`]);
//! - instance builders: the Hilbert cube, finite H-polytopes, exposing
//!   objectives, and a rational disc section ([`instances`]);
//! - a deliberately naive finite-dimensional vertex-enumeration oracle used
//!   to certify the geometric primitives ([`oracle`]).
//!
//! All computations run in one of two arithmetic modes chosen by the scalar
//! type: exact rationals (`BigRational`) for certification, or `f64` for
//! performance. See [`scalar::Scalar`].

pub mod audit;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod simplex;
pub mod system;

pub use error::Error;
pub use geometry::{Edge, NormPolicy, SchauderDecomposition};
pub use scalar::{Scalar, Tolerances};
pub use simplex::{Limits, PivotDecision, SimplexTrace, StopReason};
pub use system::{Coeffs, Constraint, ConstraintSystem, Objective, Point, SystemKind, WeightRule};
