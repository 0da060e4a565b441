//! Genetic search for trivializing move sequences.

pub mod config;
pub mod evolution;
pub mod fitness;
pub mod islands;
pub mod operators;

pub use config::{ConfigError, FitnessKind, GaConfig};
pub use evolution::{evolve, Evolution, Individual, Progress, SearchOutcome, Status};
pub use fitness::Fitness;
pub use islands::{run_islands, IslandsOutcome};
