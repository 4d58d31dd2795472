pub mod asymptotics;
pub mod backlund;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod ohyama;

pub use error::{Error, Result};
