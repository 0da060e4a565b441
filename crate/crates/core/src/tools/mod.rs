//! Experiment generators: scrambling, composition, the catalog, the census.

pub mod catalog;
pub mod census;
pub mod compose;
pub mod scramble;

pub use compose::{compose, lift_certificate, ComposeError};
pub use scramble::{scramble, scramble_with, Scrambled};
