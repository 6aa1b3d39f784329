pub mod catalog;
pub mod cli;
pub mod error;
pub mod extraction;
pub mod normalform;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
