pub mod error;
pub mod exact;
pub mod floer;
pub mod invariants;
pub mod knotcore;
pub mod novikov;
pub mod su2oracle;

pub use error::{Error, Result};
