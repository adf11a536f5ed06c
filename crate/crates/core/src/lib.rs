//! Index coding over fading broadcast channels.
//!
//! Builds bandwidth-optimal linear index codes for single-uniprior problems
//! that minimise the worst-case number of transmissions any receiver combines
//! to decode a message, and measures the resulting bit-error probability over
//! AWGN, Rayleigh and Rician channels.

pub mod analytic;
pub mod channel;
pub mod cli;
pub mod code;
pub mod codegen;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod graph;
pub mod problem;

pub use error::{Error, Result};
