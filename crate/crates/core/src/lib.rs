pub mod binary_codes;
pub mod boolfun;
pub mod charsum;
pub mod error;
pub mod gf2m;
pub mod gr4m;
pub mod trace_codes;

pub use error::{Error, Result};
