pub mod cli;
pub mod disk;
pub mod error;
pub mod retraction;
pub mod simplicial;
pub mod surface;

pub use error::{Error, Result};
