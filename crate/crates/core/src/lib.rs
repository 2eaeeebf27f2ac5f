//! Exact Thompson-group elements, Zariski-open sets given by group
//! inequations, a constructive witness solver over highly transitive actions,
//! and separation gadgets comparing the Zariski and compact-open topologies.

pub mod error;
pub mod groups;
pub mod harness;
pub mod numbers;
pub mod seeds;
pub mod separation;
pub mod solver;
pub mod words;

pub use error::{Error, Result};
