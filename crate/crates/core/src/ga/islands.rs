//! Several independent searches with consecutive seeds, run in lock-step.

use serde::Serialize;

use crate::presentation::Presentation;

use super::config::{ConfigError, GaConfig};
use super::evolution::{Evolution, Progress, SearchOutcome};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IslandsOutcome {
    /// Index of the island whose certificate is reported.
    pub winner: Option<usize>,
    /// One outcome per island, seeds `seed, seed + 1, ...`.
    pub islands: Vec<SearchOutcome>,
}

impl IslandsOutcome {
    /// The winning island, or else the island with the best final fitness.
    pub fn reported(&self) -> &SearchOutcome {
        match self.winner {
            Some(w) => &self.islands[w],
            None => self
                .islands
                .iter()
                .min_by(|a, b| a.best_fitness.cmp(&b.best_fitness))
                .expect("at least one island"),
        }
    }
}

/// Runs `count` searches. All islands advance one generation at a time; the
/// first generation in which any island is solved ends the run, and the
/// lowest-index solved island wins.
pub fn run_islands(p: &Presentation, config: &GaConfig, count: usize) -> Result<IslandsOutcome, ConfigError> {
    let count = count.max(1);
    let threads = config.threads;
    let mut islands = (0..count)
        .map(|k| {
            let c = GaConfig {
                seed: config.seed.wrapping_add(k as u64),
                // the islands share the worker threads between them
                threads: if count > 1 { 1 } else { threads },
                ..config.clone()
            };
            Evolution::new(p, c)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let step_all = |islands: &mut Vec<Evolution>| {
        #[cfg(feature = "parallel")]
        if threads > 1 && islands.len() > 1 {
            use rayon::prelude::*;
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                pool.install(|| islands.par_iter_mut().for_each(|e| {
                    e.step();
                }));
                return;
            }
        }
        for e in islands.iter_mut() {
            e.step();
        }
    };
    loop {
        if let Some(w) = islands.iter().position(|e| e.progress() == Progress::Solved) {
            return Ok(IslandsOutcome {
                winner: Some(w),
                islands: islands.iter().map(Evolution::outcome).collect(),
            });
        }
        if islands.iter().all(|e| e.progress() == Progress::Exhausted) {
            return Ok(IslandsOutcome {
                winner: None,
                islands: islands.iter().map(Evolution::outcome).collect(),
            });
        }
        step_all(&mut islands);
    }
}
