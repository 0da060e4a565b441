//! Certificates: replayable move sequences, their verification, and the
//! rewrite of mixed AC/Whitehead sequences into pure AC sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{parse_word, Letter, Word};
use crate::moves::{apply_move_mut, apply_sequence, conjugation_moves, invert_move, Move, MoveError};
use crate::presentation::{
    canonical_key, parse_presentation, trivial_tuple, CanonicalKey, Presentation, PresentationError,
    RelatorTuple,
};
use crate::tools::catalog;
use crate::whitehead;

/// What a replay must reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "presentation", rename_all = "snake_case")]
pub enum Terminal {
    /// Canonical key of `(x_1, ..., x_n)`.
    TrivialTuple,
    /// `n-1` relators Whitehead-minimize to distinct generators.
    PrimitiveSubtuple,
    /// Canonical key of the given presentation.
    TargetPresentation(Presentation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub presentation: Presentation,
    pub moves: Vec<Move>,
    pub terminal: Terminal,
    /// Expected tuple after move `k` (0-based), checked during replay.
    pub checkpoints: BTreeMap<usize, RelatorTuple>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("certificate has no `presentation` header and none was supplied")]
    MissingPresentation,
    #[error("certificate has no `terminal` header")]
    MissingTerminal,
    #[error("certificate is for {found:?}, not the supplied {supplied:?}")]
    PresentationMismatch {
        found: Presentation,
        supplied: Presentation,
    },
    #[error("{source_spec}: {source}")]
    Presentation {
        source_spec: String,
        source: PresentationError,
    },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("certificate does not verify: {0}")]
    NotVerified(String),
    #[error("certificate terminal must be the trivial tuple")]
    NotTrivialTerminal,
    #[error("certificate contains Whitehead moves; rewrite it to pure AC first")]
    NotPureAc,
}

impl Certificate {
    pub fn new(presentation: Presentation, moves: Vec<Move>, terminal: Terminal) -> Self {
        Certificate {
            presentation,
            moves,
            terminal,
            checkpoints: BTreeMap::new(),
        }
    }

    pub fn is_pure_ac(&self) -> bool {
        self.moves.iter().all(Move::is_ac)
    }

    pub fn whitehead_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_whitehead()).count()
    }

    /// Parses the certificate file format; `supplied` stands in for a missing
    /// `presentation` header and must agree with a present one.
    pub fn parse(
        text: &str,
        base_dir: Option<&Path>,
        supplied: Option<&Presentation>,
    ) -> Result<Self, CertificateError> {
        let mut presentation: Option<Presentation> = None;
        let mut terminal: Option<Terminal> = None;
        let mut moves = Vec::new();
        let mut checkpoints = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.find('#').map_or(raw, |c| &raw[..c]).trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |message: String| CertificateError::Syntax { line, message };
            if let Some(rest) = body.strip_prefix("presentation ") {
                presentation = Some(resolve_presentation(rest.trim(), base_dir)?);
                continue;
            }
            if let Some(rest) = body.strip_prefix("terminal ") {
                let rest = rest.trim();
                terminal = Some(match rest {
                    "trivial" => Terminal::TrivialTuple,
                    "primitive" => Terminal::PrimitiveSubtuple,
                    _ => match rest.strip_prefix("target ") {
                        Some(spec) => {
                            Terminal::TargetPresentation(resolve_presentation(spec.trim(), base_dir)?)
                        }
                        None => return Err(syntax(format!("unknown terminal {rest:?}"))),
                    },
                });
                continue;
            }
            let (mv, expect) = match body.split_once("=>") {
                Some((m, e)) => (m.trim(), Some(e.trim())),
                None => (body, None),
            };
            let m: Move = mv.parse().map_err(|e: MoveError| syntax(e.to_string()))?;
            if let Some(e) = expect {
                let tuple = e
                    .split_whitespace()
                    .map(parse_word)
                    .collect::<Result<RelatorTuple, _>>()
                    .map_err(|err| syntax(err.to_string()))?;
                checkpoints.insert(moves.len(), tuple);
            }
            moves.push(m);
        }
        let presentation = match (presentation, supplied) {
            (Some(p), Some(s)) if &p != s => {
                return Err(CertificateError::PresentationMismatch {
                    found: p,
                    supplied: s.clone(),
                })
            }
            (Some(p), _) => p,
            (None, Some(s)) => s.clone(),
            (None, None) => return Err(CertificateError::MissingPresentation),
        };
        Ok(Certificate {
            presentation,
            moves,
            terminal: terminal.ok_or(CertificateError::MissingTerminal)?,
            checkpoints,
        })
    }

    /// The certificate file format with inline presentations.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("presentation inline {}\n", self.presentation.inline()));
        out.push_str(&match &self.terminal {
            Terminal::TrivialTuple => "terminal trivial\n".to_string(),
            Terminal::PrimitiveSubtuple => "terminal primitive\n".to_string(),
            Terminal::TargetPresentation(p) => format!("terminal target inline {}\n", p.inline()),
        });
        for (k, m) in self.moves.iter().enumerate() {
            match self.checkpoints.get(&k) {
                Some(t) => {
                    let ws: Vec<String> = t.iter().map(Word::to_string).collect();
                    out.push_str(&format!("{m} => {}\n", ws.join(" ")));
                }
                None => out.push_str(&format!("{m}\n")),
            }
        }
        out
    }
}

/// `inline w1 w2 ...`, `catalog:NAME`, or a path to a presentation file.
pub fn resolve_presentation(spec: &str, base_dir: Option<&Path>) -> Result<Presentation, CertificateError> {
    if let Some(rest) = spec.strip_prefix("inline") {
        let words = rest
            .split_whitespace()
            .map(parse_word)
            .collect::<Result<RelatorTuple, _>>()
            .map_err(|e| CertificateError::Presentation {
                source_spec: spec.to_string(),
                source: PresentationError::Syntax {
                    line: 1,
                    column: e.column(),
                    message: e.to_string(),
                },
            })?;
        return Presentation::from_relators(words).map_err(|source| CertificateError::Presentation {
            source_spec: spec.to_string(),
            source,
        });
    }
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::lookup(name).ok_or_else(|| CertificateError::UnknownCatalog(name.to_string()));
    }
    let path = match base_dir {
        Some(b) => b.join(spec),
        None => Path::new(spec).to_path_buf(),
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CertificateError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_presentation(&text).map_err(|source| CertificateError::Presentation {
        source_spec: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayStep {
    /// 1-based
    pub index: usize,
    pub mv: Move,
    pub tuple: RelatorTuple,
    pub changed: Vec<usize>,
}

impl fmt::Display for ReplayStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} =>", self.index, self.mv)?;
        if self.changed.is_empty() {
            return write!(f, " unchanged");
        }
        for (k, &i) in self.changed.iter().enumerate() {
            let sep = if k == 0 { " " } else { ", " };
            write!(f, "{sep}r{i} -> {}", self.tuple[i].spaced())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    InvalidMove { step: usize, message: String },
    CheckpointMismatch {
        step: usize,
        expected: RelatorTuple,
        actual: RelatorTuple,
    },
    TerminalNotReached { step: usize, final_key: CanonicalKey },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::InvalidMove { step, message } => write!(f, "step {step}: {message}"),
            Failure::CheckpointMismatch {
                step,
                expected,
                actual,
            } => write!(
                f,
                "step {step}: expected {} but replay gives {}",
                join_words(expected),
                join_words(actual)
            ),
            Failure::TerminalNotReached { step, final_key } => write!(
                f,
                "terminal not reached; replay diverges at step {step} with key ({})",
                join_words(&final_key.0)
            ),
        }
    }
}

fn join_words(ws: &[Word]) -> String {
    ws.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub move_count: usize,
    pub initial: RelatorTuple,
    pub steps: Vec<ReplayStep>,
    /// `true` when `steps` was capped; the replay itself always runs to the end.
    pub steps_truncated: bool,
    pub final_tuple: RelatorTuple,
    pub final_key: CanonicalKey,
    pub failure: Option<Failure>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_recorded_steps: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_recorded_steps: 100_000,
        }
    }
}

pub fn verify(c: &Certificate) -> VerificationReport {
    verify_with(c, VerifyOptions::default())
}

pub fn verify_with(c: &Certificate, opts: VerifyOptions) -> VerificationReport {
    let rank = c.presentation.rank();
    let initial = c.presentation.relators().clone();
    let mut t = initial.clone();
    let mut steps = Vec::new();
    let mut failure = None;
    for (k, m) in c.moves.iter().enumerate() {
        if let Err(e) = m.validate(rank) {
            failure = Some(Failure::InvalidMove {
                step: k + 1,
                message: e.to_string(),
            });
            break;
        }
        let before = t.clone();
        apply_move_mut(&mut t, m);
        if steps.len() < opts.max_recorded_steps {
            let changed = (0..rank).filter(|&i| before[i] != t[i]).collect();
            steps.push(ReplayStep {
                index: k + 1,
                mv: *m,
                tuple: t.clone(),
                changed,
            });
        }
        if let Some(expected) = c.checkpoints.get(&k) {
            if *expected != t {
                failure = Some(Failure::CheckpointMismatch {
                    step: k + 1,
                    expected: expected.clone(),
                    actual: t.clone(),
                });
                break;
            }
        }
    }
    let final_key = canonical_key(&t);
    if failure.is_none() && !terminal_reached(&c.terminal, &t) {
        failure = Some(Failure::TerminalNotReached {
            step: c.moves.len(),
            final_key: final_key.clone(),
        });
    }
    VerificationReport {
        accepted: failure.is_none(),
        move_count: c.moves.len(),
        initial,
        steps_truncated: c.moves.len() > opts.max_recorded_steps && steps.len() == opts.max_recorded_steps,
        steps,
        final_tuple: t,
        final_key,
        failure,
    }
}

/// Index of a longest relator, lowest index on ties.
pub fn longest_relator(t: &[Word]) -> usize {
    let mut best = 0;
    for (i, w) in t.iter().enumerate() {
        if w.len() > t[best].len() {
            best = i;
        }
    }
    best
}

/// The relators other than one longest.
pub fn shortest_subtuple(t: &[Word]) -> RelatorTuple {
    let drop = longest_relator(t);
    t.iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, w)| w.clone())
        .collect()
}

pub fn terminal_reached(terminal: &Terminal, t: &[Word]) -> bool {
    match terminal {
        Terminal::TrivialTuple => canonical_key(t).is_trivial(t.len()),
        Terminal::PrimitiveSubtuple => {
            t.len() == 1 || whitehead::is_basis_part(&shortest_subtuple(t), true)
        }
        Terminal::TargetPresentation(p) => canonical_key(t) == p.canonical_key(),
    }
}

/// One step of the generator-tuple construction: either a plain AC move or a
/// conjugation by a word still to be transformed.
enum Elementary {
    Plain(Move),
    ConjBy(usize, Word),
}

/// AC moves taking `(..., x_i, ...)` to the image of the tuple under one
/// Whitehead move; `pos[g]` is the relator slot holding generator `g`.
fn elementary_realization(m: &Move, pos: &[usize]) -> Vec<Elementary> {
    use Elementary::*;
    match *m {
        Move::WhInvertGen(i) => vec![Plain(Move::InvertRelator(pos[i]))],
        Move::WhRightMul(i, j, true) => vec![Plain(Move::MultiplyRelator(pos[i], pos[j]))],
        Move::WhRightMul(i, j, false) => vec![
            Plain(Move::InvertRelator(pos[j])),
            Plain(Move::MultiplyRelator(pos[i], pos[j])),
            Plain(Move::InvertRelator(pos[j])),
        ],
        Move::WhLeftMul(i, j, false) => vec![
            Plain(Move::InvertRelator(pos[i])),
            Plain(Move::MultiplyRelator(pos[i], pos[j])),
            Plain(Move::InvertRelator(pos[i])),
        ],
        // x_i x_j, then conjugate by x_j
        Move::WhLeftMul(i, j, true) => vec![
            Plain(Move::MultiplyRelator(pos[i], pos[j])),
            ConjBy(pos[i], Word::generator(j)),
        ],
        Move::WhConjGen(i, j) => vec![ConjBy(pos[i], Word::letter(Letter::neg(j)))],
        _ => unreachable!("not a whitehead move"),
    }
}

fn invert_ac_sequence(seq: &[Move]) -> Vec<Move> {
    seq.iter().rev().flat_map(invert_move).collect()
}

/// Pushes every Whitehead move to the end of the sequence, then replaces the
/// trailing automorphism by AC moves acting on the generator tuple.
pub fn rewrite_pure_ac(c: &Certificate) -> Result<Certificate, CertificateError> {
    if c.terminal != Terminal::TrivialTuple {
        return Err(CertificateError::NotTrivialTerminal);
    }
    let report = verify(c);
    if let Some(f) = report.failure {
        return Err(CertificateError::NotVerified(f.to_string()));
    }
    if c.is_pure_ac() {
        return Ok(c.clone());
    }
    let n = c.presentation.rank();
    let gens = trivial_tuple(n);
    // actual = Φ(U·out) throughout
    let mut phi_inv = gens.clone();
    let mut actual = c.presentation.relators().clone();
    let mut out: Vec<Move> = Vec::new();
    let mut whitehead_moves: Vec<Move> = Vec::new();
    for m in &c.moves {
        match *m {
            Move::InvertRelator(_) | Move::MultiplyRelator(..) => out.push(*m),
            Move::ConjugateByGen(i, g, s) => {
                let w = Word::letter(Letter::new(g, s)).substitute(&phi_inv);
                out.extend(conjugation_moves(i, &w));
            }
            Move::RotateRelator(i, d) => {
                let w = actual[i].rotation_conjugator(d).substitute(&phi_inv);
                out.extend(conjugation_moves(i, &w));
            }
            _ => {
                let step_inv = apply_sequence(&gens, &invert_move(m));
                phi_inv = step_inv.iter().map(|w| w.substitute(&phi_inv)).collect();
                whitehead_moves.push(*m);
            }
        }
        apply_move_mut(&mut actual, m);
    }

    // final actual relator i is c·x^±·c⁻¹; strip the conjugator and sign
    let mut perm = vec![0usize; n];
    for (i, r) in actual.iter().enumerate() {
        let (core, conj) = r.cyclic_reduce();
        let letter = core.letters()[0];
        perm[i] = letter.generator();
        out.extend(conjugation_moves(i, &conj.inverse().substitute(&phi_inv)));
        if !letter.is_positive() {
            out.push(Move::InvertRelator(i));
        }
    }
    let mut pos = vec![0usize; n];
    for (i, &g) in perm.iter().enumerate() {
        pos[g] = i;
    }

    // Φ⁻¹ as a composite, outermost first
    let factors: Vec<Move> = whitehead_moves
        .iter()
        .flat_map(|m| invert_move(m).into_iter().rev())
        .collect();
    let mut gamma = gens.clone();
    let mut build: Vec<Move> = Vec::new();
    for beta in &factors {
        for e in elementary_realization(beta, &pos) {
            match e {
                Elementary::Plain(m) => build.push(m),
                Elementary::ConjBy(i, w) => build.extend(conjugation_moves(i, &w.substitute(&gamma))),
            }
        }
        let images = beta.automorphism_images(n).expect("whitehead move");
        gamma = images.iter().map(|w| w.substitute(&gamma)).collect();
    }
    out.extend(invert_ac_sequence(&build));

    let rewritten = Certificate::new(c.presentation.clone(), out, Terminal::TrivialTuple);
    let check = verify(&rewritten);
    match check.failure {
        None => Ok(rewritten),
        Some(f) => Err(CertificateError::NotVerified(format!("rewrite produced a bad sequence: {f}"))),
    }
}
