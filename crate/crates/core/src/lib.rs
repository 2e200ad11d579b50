#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod amalgam;
pub mod bessel_kingman;
pub mod cli;
pub mod error;
pub mod finite_hypergroup;
pub mod fourier;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use specfun::Alpha;
