//! Witness construction for basic Zariski-open sets over highly transitive
//! actions.
//!
//! A finite partial permutation is grown one chain at a time until every
//! word, traced through it, provably moves its base point; any extension to
//! a group element then lies in the set.

mod context;
mod engine;
pub mod line;
mod partial;
pub mod random;

pub use context::{ActionContext, CantorContext};
pub use engine::{brute_force_witness, init_state, intersect_witness, solve, solve_set, Solution, SolverState};
pub use partial::PartialInjection;
