//! Grover search with a randomly fluctuating oracle phase.

pub mod continuous;
pub mod discrete;
pub mod error;
pub mod harness;
pub mod noise;
pub mod polar;
pub mod spinor;

pub use error::{Error, Result};
