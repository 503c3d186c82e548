//! Figure datasets, separable-state surveys and the `qspeed` command line, on top of
//! [`qspeed_core`].

pub mod cli;
mod error;
pub mod figures;
pub mod format;
pub mod survey;
pub mod table;

pub use error::{LabError, Result};
