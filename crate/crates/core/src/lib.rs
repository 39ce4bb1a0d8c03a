pub mod budget;
pub mod cli;
pub mod error;
pub mod hom;
pub mod minion;
pub mod reduce;
pub mod relax;
pub mod structure;

pub use budget::{Budget, HomSearchConfig};
pub use error::{Error, Result};
