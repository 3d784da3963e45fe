//! Pascal-type combinatorial triangles (binomial, Stirling of both kinds,
//! Eulerian), the growth processes behind them, their time-reversed chains,
//! and the vector fields whose field lines describe large sample paths.

pub mod chains;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod fields;
pub mod rng;
pub mod triangle;

pub use error::{Error, Result};
pub use triangle::TriangleKind;

/// Crate version, embedded in every serialized report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
