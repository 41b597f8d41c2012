//! Encoder synthesis and fault-propagation analysis for CSS and
//! entanglement-assisted CSS (quantum LDPC) codes.

pub mod circuit;
pub mod cli;
pub mod code;
pub mod encoder;
pub mod error;
pub mod faults;
pub mod ftencoder;
pub mod gf2;

pub use error::{Error, Result};
