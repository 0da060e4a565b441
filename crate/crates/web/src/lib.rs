//! Browser bindings for the demo page in `www/`. Results cross the boundary
//! as JSON strings; the plain functions below carry the logic so they can be
//! tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use actriv::certify::resolve_presentation;
use actriv::ga::{Evolution, FitnessKind, GaConfig, Progress};
use actriv::tools::scramble_with;
use actriv::whitehead::{is_basis_part, is_primitive, minimize_tuple, minimize_tuple_independent, MAX_RANK};
use actriv::{parse_word, verify, Certificate, Presentation, Word};

fn presentation(spec: &str) -> Result<Presentation, String> {
    let spec = spec.trim();
    let spec = if spec.starts_with("catalog:") || spec.starts_with("inline") {
        spec.to_string()
    } else {
        format!("inline {spec}")
    };
    resolve_presentation(&spec, None).map_err(|e| e.to_string())
}

fn words(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::to_string).collect()
}

pub struct Session {
    evo: Evolution,
}

impl Session {
    pub fn new(spec: &str, seed: u64, fitness: &str, population: usize) -> Result<Self, String> {
        let p = presentation(spec)?;
        let config = GaConfig {
            seed,
            population_size: population,
            fitness: fitness.parse::<FitnessKind>().map_err(|e| e.to_string())?,
            max_generations: u64::MAX,
            ..GaConfig::default()
        };
        let evo = Evolution::new(&p, config).map_err(|e| e.to_string())?;
        Ok(Session { evo })
    }

    /// Runs up to `n` generations, stopping early once solved.
    pub fn advance(&mut self, n: u32) -> String {
        for _ in 0..n {
            if self.evo.progress() != Progress::Running {
                break;
            }
            self.evo.step();
        }
        self.state()
    }

    pub fn state(&self) -> String {
        let best = self.evo.best();
        json!({
            "generation": self.evo.generation(),
            "solved": self.evo.progress() == Progress::Solved,
            "best_fitness": best.fitness.value(),
            "best_tuple": words(&best.tuple),
            "best_length": best.chromosome.len(),
        })
        .to_string()
    }

    pub fn history(&self) -> Vec<f64> {
        self.evo.history().iter().map(|f| f.value()).collect()
    }

    pub fn certificate(&self) -> Option<String> {
        self.evo.outcome().certificate.map(|c| c.to_text())
    }
}

pub fn whitehead_report(input: &str, independent: bool) -> Result<String, String> {
    let ws = input
        .split_whitespace()
        .map(|s| parse_word(s).map_err(|e| format!("{s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if ws.is_empty() {
        return Err("enter at least one word".into());
    }
    if ws.iter().map(Word::rank_used).max().unwrap_or(0) > MAX_RANK {
        return Err(format!("at most {MAX_RANK} generators"));
    }
    let m = if independent {
        minimize_tuple_independent(&ws)
    } else {
        minimize_tuple(&ws)
    };
    let primitive = if ws.len() == 1 {
        is_primitive(&ws[0])
    } else {
        is_basis_part(&ws, !independent)
    };
    Ok(json!({
        "minimized": words(&m.words),
        "total": m.total,
        "automorphisms": m.applied.len(),
        "primitive": primitive,
    })
    .to_string())
}

pub fn scramble_report(spec: &str, length: usize, seed: u64) -> Result<String, String> {
    let p = presentation(spec)?;
    let s = scramble_with(&p, length, seed, false);
    Ok(json!({
        "relators": words(s.presentation.relators()),
        "total_length": s.presentation.total_length(),
        "applied": s.applied.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "certificate": s.certificate.to_text(),
    })
    .to_string())
}

pub fn replay_report(text: &str) -> Result<String, String> {
    let c = Certificate::parse(text, None, None).map_err(|e| e.to_string())?;
    let r = verify(&c);
    Ok(json!({
        "accepted": r.accepted,
        "initial": words(&r.initial),
        "lines": r.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "failure": r.failure.map(|f| f.to_string()),
    })
    .to_string())
}

/// A genetic search stepped from the page.
#[wasm_bindgen]
pub struct GaSession(Session);

#[wasm_bindgen]
impl GaSession {
    #[wasm_bindgen(constructor)]
    pub fn new(presentation: &str, seed: u32, fitness: &str, population: u32) -> Result<GaSession, JsError> {
        Session::new(presentation, seed.into(), fitness, population as usize)
            .map(GaSession)
            .map_err(|e| JsError::new(&e))
    }

    pub fn advance(&mut self, generations: u32) -> String {
        self.0.advance(generations)
    }

    pub fn state(&self) -> String {
        self.0.state()
    }

    /// Best fitness of each generation so far.
    pub fn history(&self) -> Vec<f64> {
        self.0.history()
    }

    pub fn certificate(&self) -> Option<String> {
        self.0.certificate()
    }
}

#[wasm_bindgen]
pub fn whitehead(words: &str, independent: bool) -> Result<String, JsError> {
    whitehead_report(words, independent).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn scramble(presentation: &str, length: u32, seed: u32) -> Result<String, JsError> {
    scramble_report(presentation, length as usize, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn replay(certificate: &str) -> Result<String, JsError> {
    replay_report(certificate).map_err(|e| JsError::new(&e))
}
