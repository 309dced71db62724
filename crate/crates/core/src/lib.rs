//! Exact polynomial eigenfunctions of deformed Calogero-Moser-Sutherland
//! operators over ℚ(θ).

pub mod cli;
pub mod eigen;
pub mod error;
pub mod fbasis;
pub mod jack;
pub mod operators;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod symbases;

pub use error::{Error, Result};
