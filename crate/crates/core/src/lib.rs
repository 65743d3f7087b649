pub mod arith;
pub mod audit;
pub mod error;
pub mod family;
pub mod measure;
pub mod search;
pub mod shifting;

pub use error::{Error, Result};
