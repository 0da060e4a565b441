//! Substitution of one presentation into another, and lifting of
//! trivializing certificates along the substitution.

use thiserror::Error;

use crate::certify::{verify, Certificate, Terminal};
use crate::freegroup::{Letter, Word};
use crate::moves::{apply_move_mut, conjugation_moves, Move};
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("certificate contains Whitehead moves; rewrite it to pure AC first")]
    NotPureAc,
    #[error("certificate must trivialize its presentation")]
    NotTrivialTerminal,
    #[error("certificate does not verify: {0}")]
    NotVerified(String),
}

/// `G(H)`: each relator of `g` with generator `x_i` replaced by relator `i` of `h`.
pub fn compose(g: &Presentation, h: &Presentation) -> Result<Presentation, ComposeError> {
    if g.rank() != h.rank() {
        return Err(ComposeError::RankMismatch(g.rank(), h.rank()));
    }
    let images = h.relators();
    let relators = g.relators().iter().map(|r| r.substitute(images)).collect();
    Ok(Presentation::new(g.rank(), relators).expect("rank preserved"))
}

/// Turns a pure-AC trivialization of `g` into a certificate taking
/// `compose(g, h)` to `h`: inversions and products are copied, conjugation by
/// `w` becomes conjugation by `w(h)`.
pub fn lift_certificate(cert: &Certificate, h: &Presentation) -> Result<Certificate, ComposeError> {
    if !cert.is_pure_ac() {
        return Err(ComposeError::NotPureAc);
    }
    if cert.terminal != Terminal::TrivialTuple {
        return Err(ComposeError::NotTrivialTerminal);
    }
    if let Some(f) = verify(cert).failure {
        return Err(ComposeError::NotVerified(f.to_string()));
    }
    let composed = compose(&cert.presentation, h)?;
    let images = h.relators();
    let mut replay = cert.presentation.relators().clone();
    let mut out = Vec::with_capacity(cert.moves.len());
    for m in &cert.moves {
        match *m {
            Move::InvertRelator(_) | Move::MultiplyRelator(..) => out.push(*m),
            Move::ConjugateByGen(i, g, s) => {
                let w = Word::letter(Letter::new(g, s)).substitute(images);
                out.extend(conjugation_moves(i, &w));
            }
            Move::RotateRelator(i, d) => {
                let w = replay[i].rotation_conjugator(d).substitute(images);
                out.extend(conjugation_moves(i, &w));
            }
            _ => unreachable!("checked pure"),
        }
        apply_move_mut(&mut replay, m);
    }
    let lifted = Certificate::new(composed, out, Terminal::TargetPresentation(h.clone()));
    match verify(&lifted).failure {
        None => Ok(lifted),
        Some(f) => Err(ComposeError::NotVerified(f.to_string())),
    }
}
