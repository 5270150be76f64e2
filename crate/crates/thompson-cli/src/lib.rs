//! File formats, the acceptance suite and the command-line front end for
//! the `thompson` crate.

pub mod acceptance;
pub mod app;
pub mod formats;
