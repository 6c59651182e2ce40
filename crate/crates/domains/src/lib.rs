//! A workbench for computational domain theory at desk scale.
//!
//! The crate provides finite posets with exhaustive order-theoretic oracles
//! (directedness, suprema, way-below, compactness), the lifting and
//! exponential constructions, the sequential tower `D₀, D₀^{D₀}, …` with its
//! embedding-projection structure and self-application, a denotational
//! evaluator for the untyped λ-calculus over tower truncations, and rounded
//! ideal completions of abstract bases — including the dyadic order, whose
//! completion is continuous but has no compact elements.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything is safe to share across threads.

pub mod dyadics;
pub mod error;
pub mod exponential;
pub mod finposet;
pub mod ideal;
pub mod lambda;
pub mod lifting;
pub mod powerset;
pub mod tower;

pub use error::{Error, Result};
