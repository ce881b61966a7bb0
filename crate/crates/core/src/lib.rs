pub mod campaign;
pub mod cli;
pub mod digital;
pub mod digital_kex;
pub mod error;
pub mod field;
pub mod matrix;
pub mod semiring;
pub mod solver;
pub mod transcript;
pub mod twisted;
pub mod twisted_kex;

pub use error::{Error, Result};
