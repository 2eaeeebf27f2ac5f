//! Exact rationals and the circle `[0, 1)` with its metric and arc measure.

mod circle;
mod rational;

pub use circle::{arc_measure, circle_distance, is_n_adic, point_in_arc, CirclePoint, OpenArc};
pub use rational::Rational;
