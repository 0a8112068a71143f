pub mod apps;
pub mod besselpoly;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod orthopoly;
pub mod hankelrule;
pub mod prudnikov;

pub use error::{Error, Result};
