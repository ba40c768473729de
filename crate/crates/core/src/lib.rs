//! Filtered dg algebras, persistent cohomology, A-infinity transfer to the
//! Rees algebra of persistent cohomology, and A_N-bottleneck distances.

pub mod barcode;
pub mod complex;
pub mod dga;
pub mod error;
pub mod field;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod persistence;
pub mod rees;
pub mod ainfty;
pub mod fixtures;
pub mod distance;
pub mod svg;
pub mod cli;

pub use error::{Error, Result};
