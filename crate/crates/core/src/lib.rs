#![allow(clippy::needless_range_loop)]

pub mod bm;
pub mod cli;
pub mod config;
pub mod dot;
pub mod error;
pub mod lattice;
pub mod induced;
pub mod linalg;
pub mod module;
pub mod orbit;
pub mod qwa;
pub mod scalar;
pub mod tgwa;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{ParameterEnv, Scalar};
