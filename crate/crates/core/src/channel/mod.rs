//! Broadcast of index-coded symbols over fading channels with M-PSK and
//! coherent hard detection.

pub mod config;
pub mod modulation;
pub mod sim;
pub mod sweep;

pub use config::{ChannelConfig, Fading, Mapping, DEFAULT_SEED};
pub use modulation::{es_of_db, gray, Constellation};
pub use sim::{simulate_bep, transmit_and_detect, trial_rng, BepRecord, PointStats, Simulation};
pub use sweep::{sweep, CodeSelector, Curve, LabeledCode};
