//! Planarizing topological drawings by vertex splitting.

pub mod drawing;
pub mod error;
pub mod evd;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod planarity;
pub mod registry;
pub mod scd;
pub mod singlesplit;
pub mod ssre_dp;
pub mod ssre_prep;
pub mod toolkit;

pub use error::{Error, Result};
