use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FitnessKind {
    /// Sum of the `n-1` shortest relator lengths; solved when they are part of a basis.
    Fit1,
    /// Total relator length.
    #[default]
    Fit2,
    /// Total length plus `k/m` for a chromosome of length `k`.
    Fit3,
}

impl std::str::FromStr for FitnessKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fit1" => Ok(FitnessKind::Fit1),
            "fit2" => Ok(FitnessKind::Fit2),
            "fit3" => Ok(FitnessKind::Fit3),
            _ => Err(format!("unknown fitness {s:?}; expected fit1, fit2 or fit3")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Relative chances of M1 (append), M2 (insert), M3 (delete), M4 (change).
    pub mutation_weights: [f64; 4],
    pub fitness: FitnessKind,
    pub penalty_m: u64,
    pub max_generations: u64,
    pub seed: u64,
    /// Inclusive bounds on initial chromosome length.
    pub init_length: [usize; 2],
    /// Chromosomes are truncated to this many genes.
    pub max_chromosome_length: usize,
    /// Replays whose total relator length exceeds this get the worst fitness.
    pub length_cap: usize,
    /// Fit1 only: minimize each of the `n-1` relators on its own.
    pub independent_primitive: bool,
    /// Worker threads for offspring evaluation; results do not depend on it.
    pub threads: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            crossover_rate: 0.85,
            mutation_rate: 0.95,
            mutation_weights: [0.5, 0.2, 0.15, 0.15],
            fitness: FitnessKind::Fit2,
            penalty_m: 10,
            max_generations: 10_000,
            seed: 0,
            init_length: [1, 10],
            max_chromosome_length: 1000,
            length_cap: 2000,
            independent_primitive: false,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("population_size must be at least 2, got {0}")]
    Population(usize),
    #[error("{name} must lie in [0, 1], got {value}")]
    Rate { name: &'static str, value: f64 },
    #[error("mutation_weights must be non-negative and sum to 1, got {0:?}")]
    Weights([f64; 4]),
    #[error("penalty_m must be positive")]
    Penalty,
    #[error("init_length must satisfy 0 <= lo <= hi <= max_chromosome_length, got {0:?}")]
    InitLength([usize; 2]),
    #[error("threads must be positive")]
    Threads,
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.population_size < 2 {
            return Err(ConfigError::Population(self.population_size));
        }
        for (name, value) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Rate { name, value });
            }
        }
        let w = self.mutation_weights;
        if w.iter().any(|x| x.is_nan() || *x < 0.0) || (w.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Weights(w));
        }
        if self.penalty_m == 0 {
            return Err(ConfigError::Penalty);
        }
        let [lo, hi] = self.init_length;
        if lo > hi || hi > self.max_chromosome_length {
            return Err(ConfigError::InitLength(self.init_length));
        }
        if self.threads == 0 {
            return Err(ConfigError::Threads);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = GaConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.population_size, 50);
        assert_eq!(c.fitness, FitnessKind::Fit2);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = [
            GaConfig { population_size: 1, ..GaConfig::default() },
            GaConfig { crossover_rate: 1.5, ..GaConfig::default() },
            GaConfig { mutation_weights: [0.5, 0.5, 0.5, 0.0], ..GaConfig::default() },
            GaConfig { mutation_weights: [f64::NAN, 0.5, 0.5, 0.0], ..GaConfig::default() },
            GaConfig { penalty_m: 0, ..GaConfig::default() },
            GaConfig { init_length: [5, 2], ..GaConfig::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn fitness_names() {
        assert_eq!("FIT3".parse::<FitnessKind>(), Ok(FitnessKind::Fit3));
        assert!("fit4".parse::<FitnessKind>().is_err());
    }
}
