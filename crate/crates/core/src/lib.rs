pub mod base_rings;
pub mod building;
pub mod cli;
pub mod cover;
pub mod divisor;
pub mod error;
pub mod hyperplanes;
pub mod idempotents;
pub mod report;
pub mod simplex_units;

pub use error::{Error, Result};
