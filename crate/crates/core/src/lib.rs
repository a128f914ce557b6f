pub mod bivar;
pub mod conditions;
pub mod curves;
pub mod error;
pub mod field;
pub mod identities;
pub mod niho;
pub mod sweep;
pub mod symbolic;
pub mod witness;

pub use error::{Error, Result};
