pub mod algebra;
pub mod cli;
pub mod derham;
pub mod error;
pub mod exact;
pub mod lie;
pub mod qchar;

pub use error::{Error, Result};
