pub mod classification;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod group;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod operad;
pub mod scalar;
pub mod weyl;
pub mod workbench;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
