pub mod cli;
pub mod error;
pub mod hives;
pub mod json;
pub mod mconvex;
pub mod plucker;
pub mod presentations;
pub mod representations;
pub mod tracts;

pub use error::{Error, Result};
pub use mconvex::{MConvexSet, Point};
