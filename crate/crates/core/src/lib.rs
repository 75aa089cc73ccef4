//! A solver for epistemic logic programs under Gelfond's 1991 world-view
//! semantics (and the Kahl et al. 2015 variant through a translation).
//!
//! The pipeline parses a program ([`syntax`]), instantiates it
//! ([`grounder`]), turns subjective literals into guessed auxiliary atoms
//! ([`epistemic`]), optionally prunes the guess ([`optimize`]) and checks
//! each candidate against the cautious and brave consequences computed by
//! the answer-set engine ([`stable`]).

pub mod cli;
pub mod epistemic;
pub mod error;
pub mod grounder;
pub mod optimize;
pub mod stable;
pub mod syntax;

pub use error::{Error, Result};
