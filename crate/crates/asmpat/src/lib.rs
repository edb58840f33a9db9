//! Alternating sign matrix pattern toolkit: exhaustive generation,
//! containment testing under three modes, avoidance-class enumeration,
//! explicit block constructions, and exact verification of the associated
//! closed forms and generating-function identities.

pub mod cli;
pub mod core;
pub mod enumerator;
pub mod error;
pub mod formulas;
pub mod generator;
pub mod matcher;

pub use error::{Error, Result};
