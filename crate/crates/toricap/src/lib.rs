pub mod error;
pub mod fan;
pub mod toric;
pub mod tangency;
pub mod capacity;
pub mod oracle;
pub mod corpus;
pub mod domain;
pub mod batch;
pub mod geom;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
