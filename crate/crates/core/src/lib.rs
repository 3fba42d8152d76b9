pub mod arith;
pub mod coadjoint;
pub mod error;
pub mod modular;
pub mod polytope;
pub mod selftest;
pub mod localization;
pub mod symfunc;

pub use error::{Error, Result};
