//! Exact arithmetic and verification kernels for the circle method over
//! `F_q[u]`: counting degree-`e` maps into a hypersurface and checking the
//! exponential-sum estimates behind that count on small instances.

pub mod acceptance;
pub mod budget;
pub mod characters;
pub mod circle;
pub mod error;
pub mod ff_core;
pub mod counting;
pub mod forms;
#[cfg(test)]
mod invariants;
pub mod sample;

pub use budget::Budget;
pub use error::{Error, Result};
