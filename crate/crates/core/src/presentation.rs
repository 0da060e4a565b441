//! Balanced presentations, the presentation file format, and canonical keys.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{parse_word, Word};

/// An ordered tuple of relators.
pub type RelatorTuple = Vec<Word>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing `rank <n>` header")]
    MissingHeader,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("presentation is not balanced: rank {rank} but {relators} relators")]
    Unbalanced { rank: usize, relators: usize },
    #[error("line {line}: generator {letter:?} is outside rank {rank}")]
    LetterOutOfRank {
        line: usize,
        letter: char,
        rank: usize,
    },
}

/// A balanced presentation `<x_1..x_n ; r_1..r_n>`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    rank: usize,
    relators: RelatorTuple,
}

impl Presentation {
    pub fn new(rank: usize, relators: RelatorTuple) -> Result<Self, PresentationError> {
        if rank == 0 {
            return Err(PresentationError::ZeroRank);
        }
        if relators.len() != rank {
            return Err(PresentationError::Unbalanced {
                rank,
                relators: relators.len(),
            });
        }
        for (k, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.generator() >= rank) {
                return Err(PresentationError::LetterOutOfRank {
                    line: k + 2,
                    letter: l.to_char().unwrap_or('?'),
                    rank,
                });
            }
        }
        Ok(Presentation { rank, relators })
    }

    /// Rank equal to the number of relators.
    pub fn from_relators(relators: RelatorTuple) -> Result<Self, PresentationError> {
        Presentation::new(relators.len(), relators)
    }

    /// `<x_1..x_n ; x_1..x_n>`.
    pub fn trivial(rank: usize) -> Self {
        Presentation {
            rank,
            relators: trivial_tuple(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &RelatorTuple {
        &self.relators
    }

    pub fn into_relators(self) -> RelatorTuple {
        self.relators
    }

    pub fn total_length(&self) -> usize {
        total_length(&self.relators)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_key(&self.relators)
    }

    /// Single-line form `w1 w2 ...` used inline in certificates.
    pub fn inline(&self) -> String {
        self.relators
            .iter()
            .map(Word::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} ; {}>", self.rank, self.inline())
    }
}

/// The presentation file format: `rank <n>` then one relator per line.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for r in &self.relators {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn trivial_tuple(rank: usize) -> RelatorTuple {
    (0..rank).map(Word::generator).collect()
}

pub fn total_length(t: &[Word]) -> usize {
    t.iter().map(Word::len).sum()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut rank: Option<usize> = None;
    let mut relators = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let Some(n) = rank else {
            let mut parts = body.split_whitespace();
            let (Some("rank"), Some(num), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(PresentationError::MissingHeader);
            };
            let n: usize = num.parse().map_err(|_| PresentationError::Syntax {
                line,
                column: body.find(num).map_or(1, |c| c + 1),
                message: format!("invalid rank {num:?}"),
            })?;
            if n == 0 {
                return Err(PresentationError::ZeroRank);
            }
            rank = Some(n);
            continue;
        };
        let w = parse_word(body).map_err(|e| PresentationError::Syntax {
            line,
            column: e.column(),
            message: e.to_string(),
        })?;
        if let Some(l) = w.letters().iter().find(|l| l.generator() >= n) {
            return Err(PresentationError::LetterOutOfRank {
                line,
                letter: l.to_char().unwrap_or('?'),
                rank: n,
            });
        }
        relators.push(w);
    }
    let rank = rank.ok_or(PresentationError::MissingHeader)?;
    Presentation::new(rank, relators)
}

/// Relators up to reorder, inversion, conjugation, and rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<Word>);

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Word::to_string).collect();
        write!(f, "Key({})", parts.join(", "))
    }
}

impl CanonicalKey {
    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn is_trivial(&self, rank: usize) -> bool {
        self.0.len() == rank
            && self
                .0
                .iter()
                .enumerate()
                .all(|(g, w)| *w == Word::generator(g))
    }
}

pub fn canonical_key(t: &[Word]) -> CanonicalKey {
    let mut words: Vec<Word> = t.iter().map(Word::canonical_cyclic).collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    CanonicalKey(words)
}

/// Permutes generators: letter `x_i` becomes `x_{perm[i]}`.
pub fn relabel(t: &[Word], perm: &[usize]) -> RelatorTuple {
    let images: Vec<Word> = perm.iter().map(|&g| Word::generator(g)).collect();
    t.iter().map(|w| w.substitute(&images)).collect()
}
