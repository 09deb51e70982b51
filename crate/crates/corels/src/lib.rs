//! File formats, data preparation and the command-line front end for
//! [`corels_core`].

pub mod error;
pub mod formats;
pub mod manifest;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod propublica;
pub mod table;
pub mod trace;

pub use corels_core as core;
pub use error::{Error, Result};
