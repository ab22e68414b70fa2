//! Finite linear spaces: a point set with a family of proper lines (each
//! with at least two points) such that every pair of distinct points lies on
//! exactly one line. In every such space the number of lines m is at least
//! the number of points n, and equality forces a near-pencil or a projective
//! plane.
//!
//! This crate validates the axioms and then *certifies* m >= n along several
//! independent routes, each emitting machine-checkable evidence:
//!
//! - [`matching`]: Hall's condition on line complements, systems of distinct
//!   representatives via augmenting-path matching, a min-degree proof trace,
//!   a cyclic certificate, and an exact weighted-sum verifier;
//! - [`linalg`]: exact Gram-matrix arguments (closed-form determinant
//!   cross-checked against fraction-free elimination, rank, positive
//!   definiteness), including the lambda-design generalization;
//! - [`hanani`]: pencil counting around a longest line;
//! - [`classify`]: the equality-case taxonomy;
//! - [`gen`]: generators and an exhaustive labeled census on small ground
//!   sets that every claim is re-verified against.
//!
//! All arithmetic on the mathematical paths is exact (big integers and
//! rationals); there is no floating point anywhere in this crate.

#![forbid(unsafe_code)]

pub mod classify;
pub mod gen;
pub mod hanani;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod report;
pub mod util;

pub use incidence::{
    dbe_inequalities, degree_profile, double_count_check, normalize, validate,
    IncidenceStructure, LinearSpace, TheoremViolation, ValidationError,
};
