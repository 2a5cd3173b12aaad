pub mod curves;
pub mod error;
pub mod ffield;
pub mod mp;
pub mod zeta;
pub mod classify;
pub mod cli;
pub mod equidist;
pub mod kloosterman;

pub use error::{Error, Result};
