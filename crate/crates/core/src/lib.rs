//! Exact point configurations, regular triangulations, positive lexicographic
//! liftings and a census of neighborly polytopes.
//!
//! All arithmetic is over arbitrary precision rationals. Points carry
//! permanent labels that survive deletion, contraction and lifting.

pub mod bounds;
pub mod census;
pub mod cli;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod lifting;
pub mod lp;
pub mod rational;
pub mod triangulation;

pub use error::{Error, Result};
pub use kernel::PointConfiguration;
pub use rational::Rational;

/// Permanent identity of a point in a configuration.
pub type Label = usize;
