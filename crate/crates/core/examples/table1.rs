//! Scramble-then-search statistics for one scramble length.
//!
//! cargo run --release -p actriv --example table1 -- <length> [seeds] [max_generations]

use actriv::ga::{evolve, GaConfig, Status};
use actriv::tools::scramble;
use actriv::Presentation;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let length = *args.first().unwrap_or(&10) as usize;
    let seeds = *args.get(1).unwrap_or(&20);
    let max_generations = *args.get(2).unwrap_or(&5000);
    let mut lengths = Vec::new();
    let mut gens = Vec::new();
    let mut solved = 0;
    for seed in 1..=seeds {
        let s = scramble(&Presentation::trivial(2), length, seed);
        lengths.push(s.presentation.total_length());
        let cfg = GaConfig {
            seed,
            max_generations,
            ..GaConfig::default()
        };
        let out = evolve(&s.presentation, cfg).unwrap();
        if out.status == Status::Solved {
            solved += 1;
            gens.push(out.generations_used);
        }
        println!(
            "seed {seed:3}  length {:3}  {:?}  generations {:5}  certificate {}",
            s.presentation.total_length(),
            out.status,
            out.generations_used,
            out.certificate.map_or(0, |c| c.moves.len())
        );
    }
    gens.sort_unstable();
    let mean = lengths.iter().sum::<usize>() as f64 / lengths.len() as f64;
    let avg = gens.iter().sum::<u64>() as f64 / gens.len().max(1) as f64;
    println!(
        "scramble {length}: mean total length {mean:.1}, solved {solved}/{seeds}, mean generations {avg:.1}, median {}",
        gens.get(gens.len() / 2).copied().unwrap_or(0)
    );
}
