//! The generational loop: evaluate, test for termination, then replace
//! everything but the fittest member by offspring.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::{verify, Certificate, Terminal};
use crate::moves::{apply_move_mut, Move, MoveTable};
use crate::presentation::{Presentation, RelatorTuple};

use super::config::{ConfigError, FitnessKind, GaConfig};
use super::fitness::{evaluate, is_terminal, sentinel, Fitness};
use super::operators::{crossover, mutate, roulette_weights, sample_weighted, uniform, Chromosome, Mutation};

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub tuple: RelatorTuple,
    pub fitness: Fitness,
    /// The replay exceeded the length cap and was abandoned.
    pub capped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub status: Status,
    pub seed: u64,
    pub generations_used: u64,
    pub best_moves: Vec<Move>,
    pub best_tuple: RelatorTuple,
    pub best_fitness: Fitness,
    /// Best fitness of each generation, starting with the initial population.
    pub history: Vec<Fitness>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    Running,
    Solved,
    Exhausted,
}

/// How an offspring relates to its first parent, for reuse of the replay.
enum Origin {
    Copy(usize),
    Appended(usize),
    Fresh,
}

struct Ctx<'a> {
    start: &'a RelatorTuple,
    table: &'a MoveTable,
    config: &'a GaConfig,
}

impl Ctx<'_> {
    fn fitness(&self, t: &[crate::freegroup::Word], k: usize) -> Fitness {
        evaluate(self.config.fitness, t, k, self.config.penalty_m)
    }

    fn capped(&self, chromosome: Chromosome, tuple: RelatorTuple) -> Individual {
        let k = chromosome.len();
        Individual {
            chromosome,
            tuple,
            fitness: sentinel(self.config.fitness, self.config.length_cap, k, self.config.penalty_m),
            capped: true,
        }
    }

    fn replay(&self, chromosome: Chromosome) -> Individual {
        let mut t = self.start.clone();
        for &g in &chromosome {
            apply_move_mut(&mut t, &self.table.moves()[g as usize]);
            if t.iter().map(|w| w.len()).sum::<usize>() > self.config.length_cap {
                return self.capped(chromosome, t);
            }
        }
        let fitness = self.fitness(&t, chromosome.len());
        Individual {
            chromosome,
            tuple: t,
            fitness,
            capped: false,
        }
    }

    fn build(&self, mut chromosome: Chromosome, origin: Origin, parents: &[Individual]) -> Individual {
        let cap = self.config.max_chromosome_length;
        if chromosome.len() > cap {
            chromosome.truncate(cap);
            return self.replay(chromosome);
        }
        match origin {
            Origin::Copy(i) => {
                let p = &parents[i];
                let mut ind = p.clone();
                // Fit3 depends on the length only, which is unchanged
                ind.chromosome = chromosome;
                ind
            }
            Origin::Appended(i) if !parents[i].capped => {
                let mut t = parents[i].tuple.clone();
                let g = *chromosome.last().expect("appended");
                apply_move_mut(&mut t, &self.table.moves()[g as usize]);
                if t.iter().map(|w| w.len()).sum::<usize>() > self.config.length_cap {
                    return self.capped(chromosome, t);
                }
                let fitness = self.fitness(&t, chromosome.len());
                Individual {
                    chromosome,
                    tuple: t,
                    fitness,
                    capped: false,
                }
            }
            _ => self.replay(chromosome),
        }
    }

    fn random_chromosome<R: Rng>(&self, rng: &mut R) -> Chromosome {
        let [lo, hi] = self.config.init_length;
        let len = uniform(rng, lo, hi + 1);
        let genes = self.table.len() as u32;
        (0..len).map(|_| rng.gen_range(0..genes)).collect()
    }

    /// Two offspring from one seeded stream.
    fn offspring_pair(&self, pop: &[Individual], weights: &[u128], rng: &mut ChaCha8Rng) -> [Individual; 2] {
        let a = sample_weighted(weights, rng);
        let b = sample_weighted(weights, rng);
        let (mut c1, mut c2, mut o1, mut o2);
        if rng.gen::<f64>() < self.config.crossover_rate && pop[a].chromosome.len() >= 2 && pop[b].chromosome.len() >= 2 {
            (c1, c2) = crossover(&pop[a].chromosome, &pop[b].chromosome, rng);
            (o1, o2) = (Origin::Fresh, Origin::Fresh);
        } else {
            c1 = pop[a].chromosome.clone();
            c2 = pop[b].chromosome.clone();
            (o1, o2) = (Origin::Copy(a), Origin::Copy(b));
        }
        let genes = self.table.len() as u32;
        for (c, o) in [(&mut c1, &mut o1), (&mut c2, &mut o2)] {
            if rng.gen::<f64>() < self.config.mutation_rate {
                match (mutate(c, genes, &self.config.mutation_weights, rng), &*o) {
                    (None, _) => {}
                    (Some(Mutation::Append), Origin::Copy(i)) => *o = Origin::Appended(*i),
                    _ => *o = Origin::Fresh,
                }
            }
        }
        [self.build(c1, o1, pop), self.build(c2, o2, pop)]
    }
}

/// A running search, advanced one generation at a time.
pub struct Evolution {
    presentation: Presentation,
    config: GaConfig,
    table: MoveTable,
    master: ChaCha8Rng,
    population: Vec<Individual>,
    generation: u64,
    history: Vec<Fitness>,
    state: Progress,
    solution: Option<(usize, Certificate)>,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

fn stream(seed: u64, k: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k as u64);
    r
}

impl Evolution {
    pub fn new(p: &Presentation, config: GaConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let table = MoveTable::new(p.rank()).expect("positive rank");
        let mut master = ChaCha8Rng::seed_from_u64(config.seed);
        let init_seed = master.next_u64();
        let start = p.relators().clone();
        let ctx = Ctx {
            start: &start,
            table: &table,
            config: &config,
        };
        let population = (0..config.population_size)
            .map(|i| {
                let mut rng = stream(init_seed, i);
                ctx.replay(ctx.random_chromosome(&mut rng))
            })
            .collect();
        #[cfg(feature = "parallel")]
        let pool = (config.threads > 1)
            .then(|| rayon::ThreadPoolBuilder::new().num_threads(config.threads).build().ok())
            .flatten();
        let mut e = Evolution {
            presentation: p.clone(),
            config,
            table,
            master,
            population,
            generation: 0,
            history: Vec::new(),
            state: Progress::Running,
            solution: None,
            #[cfg(feature = "parallel")]
            pool,
        };
        e.check();
        Ok(e)
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn progress(&self) -> Progress {
        self.state
    }

    pub fn history(&self) -> &[Fitness] {
        &self.history
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn config(&self) -> &GaConfig {
        &self.config
    }

    /// Index of the fittest member: lowest fitness, then shortest, then first.
    pub fn elite_index(&self) -> usize {
        (0..self.population.len())
            .min_by(|&i, &j| {
                let (a, b) = (&self.population[i], &self.population[j]);
                a.fitness
                    .cmp(&b.fitness)
                    .then(a.chromosome.len().cmp(&b.chromosome.len()))
                    .then(i.cmp(&j))
            })
            .expect("non-empty population")
    }

    pub fn best(&self) -> &Individual {
        match &self.solution {
            Some((i, _)) => &self.population[*i],
            None => &self.population[self.elite_index()],
        }
    }

    pub fn decode(&self, c: &[u32]) -> Vec<Move> {
        c.iter().map(|&g| self.table.moves()[g as usize]).collect()
    }

    fn terminal_kind(&self) -> Terminal {
        match self.config.fitness {
            FitnessKind::Fit1 => Terminal::PrimitiveSubtuple,
            _ => Terminal::TrivialTuple,
        }
    }

    /// Records the generation's best and looks for a verified solution.
    fn check(&mut self) {
        let elite = self.elite_index();
        self.history.push(self.population[elite].fitness);
        for (i, ind) in self.population.iter().enumerate() {
            if ind.capped || !is_terminal(self.config.fitness, &ind.tuple, self.config.independent_primitive) {
                continue;
            }
            let cert = Certificate::new(self.presentation.clone(), self.decode(&ind.chromosome), self.terminal_kind());
            if verify(&cert).accepted {
                self.solution = Some((i, cert));
                self.state = Progress::Solved;
                return;
            }
        }
        if self.generation >= self.config.max_generations {
            self.state = Progress::Exhausted;
        }
    }

    /// Advances one generation unless the search has finished.
    pub fn step(&mut self) -> Progress {
        if self.state != Progress::Running {
            return self.state;
        }
        let gen_seed = self.master.next_u64();
        let pop = &self.population;
        let elite = self.elite_index();
        let weights = roulette_weights(&pop.iter().map(|i| i.fitness).collect::<Vec<_>>());
        let needed = self.config.population_size - 1;
        let pairs = needed.div_ceil(2);
        let ctx = Ctx {
            start: self.presentation.relators(),
            table: &self.table,
            config: &self.config,
        };
        let make = |k: usize| ctx.offspring_pair(pop, &weights, &mut stream(gen_seed, k));
        #[cfg(feature = "parallel")]
        let kids: Vec<[Individual; 2]> = match &self.pool {
            Some(pool) => {
                use rayon::prelude::*;
                pool.install(|| (0..pairs).into_par_iter().map(make).collect())
            }
            None => (0..pairs).map(make).collect(),
        };
        #[cfg(not(feature = "parallel"))]
        let kids: Vec<[Individual; 2]> = (0..pairs).map(make).collect();
        let mut next = Vec::with_capacity(self.config.population_size);
        next.push(pop[elite].clone());
        next.extend(kids.into_iter().flatten().take(needed));
        self.population = next;
        self.generation += 1;
        self.check();
        self.state
    }

    pub fn outcome(&self) -> SearchOutcome {
        let best = self.best();
        SearchOutcome {
            status: if self.state == Progress::Solved {
                Status::Solved
            } else {
                Status::Exhausted
            },
            seed: self.config.seed,
            generations_used: self.generation,
            best_moves: self.decode(&best.chromosome),
            best_tuple: best.tuple.clone(),
            best_fitness: best.fitness,
            history: self.history.clone(),
            certificate: self.solution.as_ref().map(|(_, c)| c.clone()),
        }
    }

    pub fn run(mut self) -> SearchOutcome {
        while self.step() == Progress::Running {}
        self.outcome()
    }
}

/// Runs the search to completion.
pub fn evolve(p: &Presentation, config: GaConfig) -> Result<SearchOutcome, ConfigError> {
    Ok(Evolution::new(p, config)?.run())
}
