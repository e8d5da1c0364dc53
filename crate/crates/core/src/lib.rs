pub mod error;
pub mod kernel;

pub use error::{GeometryError, Result};
pub mod catalog;
pub mod chart;
pub mod metric;
pub mod curvature;
pub mod embedding;
pub mod scan;
pub mod report;
pub mod cli;
