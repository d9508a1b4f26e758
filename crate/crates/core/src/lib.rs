pub mod closure;
pub mod error;
pub mod exact;
pub mod generators;
pub mod groups;
pub mod par;
pub mod pingpong;

pub use error::{Error, Result};
