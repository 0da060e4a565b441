//! Whitehead descent: cyclic-length minimization over the automorphism
//! orbit, and the primitivity test built on it.

use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{Letter, Word};

/// Largest rank for which cut sets are enumerated.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhiteheadError {
    #[error("whitehead descent supports rank at most {MAX_RANK}, got {0}")]
    RankTooLarge(usize),
}

/// A type-II Whitehead automorphism `(A, a)`: `a` is fixed and every other
/// generator `x` maps to `a^{-[x⁻¹ ∈ A]} x a^{[x ∈ A]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WhiteheadAuto {
    pub multiplier: Letter,
    pub cut_set: Vec<Letter>,
}

impl WhiteheadAuto {
    pub fn images(&self, rank: usize) -> Vec<Word> {
        let a = self.multiplier;
        (0..rank)
            .map(|g| {
                if g == a.generator() {
                    return Word::generator(g);
                }
                let x = Letter::pos(g);
                let mut letters = Vec::with_capacity(3);
                if self.cut_set.contains(&x.inverse()) {
                    letters.push(a.inverse());
                }
                letters.push(x);
                if self.cut_set.contains(&x) {
                    letters.push(a);
                }
                Word::from_letters(letters)
            })
            .collect()
    }

    pub fn apply(&self, w: &Word, rank: usize) -> Word {
        w.substitute(&self.images(rank))
    }
}

/// Every non-trivial type-II automorphism of rank `rank`, in a fixed order:
/// multiplier `a, A, b, B, ...`, then cut-set bitmask ascending.
pub fn enumerate_autos(rank: usize) -> Result<Vec<(WhiteheadAuto, Vec<Word>)>, WhiteheadError> {
    if rank > MAX_RANK {
        return Err(WhiteheadError::RankTooLarge(rank));
    }
    let mut out = Vec::new();
    for g in 0..rank {
        for positive in [true, false] {
            let a = Letter::new(g, positive);
            let others: Vec<Letter> = (0..rank)
                .filter(|&h| h != g)
                .flat_map(|h| [Letter::pos(h), Letter::neg(h)])
                .collect();
            // mask 0 is the identity
            for mask in 1u32..(1 << others.len()) {
                let mut cut_set = vec![a];
                cut_set.extend(
                    others
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask & (1 << k) != 0)
                        .map(|(_, &l)| l),
                );
                let auto = WhiteheadAuto {
                    multiplier: a,
                    cut_set,
                };
                let images = auto.images(rank);
                out.push((auto, images));
            }
        }
    }
    Ok(out)
}

fn rank_of(words: &[Word]) -> usize {
    words.iter().map(Word::rank_used).max().unwrap_or(0)
}

/// Result of a descent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimized {
    pub words: Vec<Word>,
    pub total: usize,
    pub applied: Vec<WhiteheadAuto>,
}

/// Joint steepest descent on a tuple of cyclic words.
pub fn minimize_tuple_in_rank(words: &[Word], rank: usize) -> Result<Minimized, WhiteheadError> {
    let autos = enumerate_autos(rank)?;
    let mut current: Vec<Word> = words.iter().map(|w| w.cyclic_reduce().0).collect();
    let mut total: usize = current.iter().map(Word::len).sum();
    let mut applied = Vec::new();
    loop {
        let mut best: Option<(usize, Vec<Word>, usize)> = None;
        for (k, (_, images)) in autos.iter().enumerate() {
            let image: Vec<Word> = current
                .iter()
                .map(|w| w.substitute(images).cyclic_reduce().0)
                .collect();
            let len: usize = image.iter().map(Word::len).sum();
            if len < best.as_ref().map_or(total, |b| b.2) {
                best = Some((k, image, len));
            }
        }
        match best {
            Some((k, image, len)) => {
                applied.push(autos[k].0.clone());
                current = image;
                total = len;
            }
            None => break,
        }
    }
    Ok(Minimized {
        words: current,
        total,
        applied,
    })
}

/// Joint descent in the smallest rank containing every letter of `words`.
pub fn minimize_tuple(words: &[Word]) -> Minimized {
    let rank = rank_of(words).min(MAX_RANK);
    minimize_tuple_in_rank(words, rank.max(1)).unwrap_or_else(|_| Minimized {
        words: words.to_vec(),
        total: words.iter().map(Word::cyclic_len).sum(),
        applied: Vec::new(),
    })
}

/// Descent applied to each word on its own.
pub fn minimize_tuple_independent(words: &[Word]) -> Minimized {
    let mut out = Minimized {
        words: Vec::new(),
        total: 0,
        applied: Vec::new(),
    };
    for w in words {
        let m = minimize(w);
        out.total += m.total;
        out.words.extend(m.words);
        out.applied.extend(m.applied);
    }
    out
}

/// Minimal cyclic word in the automorphism orbit of `w`.
pub fn minimize(w: &Word) -> Minimized {
    minimize_tuple(std::slice::from_ref(w))
}

/// `true` iff `w` is part of a free basis.
pub fn is_primitive(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    // a primitive word has coprime exponent sums
    let sums = w.exponent_sums(w.rank_used());
    if sums.iter().fold(0i64, |g, &s| gcd(g, s)) != 1 {
        return false;
    }
    minimize(w).total == 1
}

/// Whether the minimized tuple consists of distinct generators (up to sign),
/// i.e. reads as part of a free basis.
pub fn is_basis_part(words: &[Word], joint: bool) -> bool {
    if words.is_empty() {
        return true;
    }
    if words.iter().any(Word::is_empty) {
        return false;
    }
    let m = if joint {
        minimize_tuple(words)
    } else {
        minimize_tuple_independent(words)
    };
    if m.words.iter().any(|w| w.len() != 1) {
        return false;
    }
    if !joint {
        return true;
    }
    let mut gens: Vec<usize> = m.words.iter().map(|w| w.letters()[0].generator()).collect();
    gens.sort_unstable();
    gens.dedup();
    gens.len() == m.words.len()
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
