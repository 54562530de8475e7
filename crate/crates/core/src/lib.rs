pub mod classify;
pub mod doubled;
pub mod error;
pub mod gnvw;
pub mod info_flow;
pub mod qca;
pub mod spi;
pub mod tensor;

pub use error::{QcaError, Result};
