pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod noise;
pub mod oracle;
pub mod quadrature;

pub use error::{Error, Result};
