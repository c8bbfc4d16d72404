//! File formats, charts and the check runner behind the `motext`
//! command line.

pub mod cache;
pub mod chart;
pub mod checkpoint;
pub mod checks;
pub mod error;
pub mod ingest;

pub use error::{MotextError, Result};
