//! Driver logic behind the `cppforge` binary: exhaustive scans, family
//! checks, conjecture runs and report output.

pub mod conjecture;
pub mod count;
pub mod error;
pub mod report;
pub mod verify;
pub mod walsh;

pub use error::{HarnessError, Result};
