pub mod error;
pub mod exgraph;
pub mod export;
pub mod field;
pub mod morse;
pub mod query;
pub mod temporal;
pub mod tracks;
mod union_find;

pub use error::{Error, Result};
