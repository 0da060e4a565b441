//! The elementary transformation set: AC moves on single relators,
//! Whitehead automorphisms acting on every relator, and rotations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{Direction, Letter, Word};
use crate::presentation::RelatorTuple;

/// Relator/generator indices are `usize`; signs are `+1` (`true`) or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// `r_i -> r_i⁻¹`
    InvertRelator(usize),
    /// `r_i -> r_i r_j`, `i != j`
    MultiplyRelator(usize, usize),
    /// `r_i -> x_j^s r_i x_j^-s`
    ConjugateByGen(usize, usize, bool),
    RotateRelator(usize, Direction),
    /// `x_i -> x_i⁻¹`
    WhInvertGen(usize),
    /// `x_i -> x_j^s x_i`
    WhLeftMul(usize, usize, bool),
    /// `x_i -> x_i x_j^s`
    WhRightMul(usize, usize, bool),
    /// `x_i -> x_j⁻¹ x_i x_j`
    WhConjGen(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("move `{0}` refers to an index outside rank {1}")]
    OutOfRank(Move, usize),
    #[error("move `{0}` needs two distinct indices")]
    SameIndex(Move),
    #[error("cannot parse move line {0:?}: {1}")]
    Syntax(String, String),
}

impl Move {
    pub fn is_whitehead(&self) -> bool {
        matches!(
            self,
            Move::WhInvertGen(_) | Move::WhLeftMul(..) | Move::WhRightMul(..) | Move::WhConjGen(..)
        )
    }

    pub fn is_ac(&self) -> bool {
        !self.is_whitehead()
    }

    /// Checks index bounds and distinctness against `rank`.
    pub fn validate(&self, rank: usize) -> Result<(), MoveError> {
        let (indices, needs_distinct) = match *self {
            Move::InvertRelator(i) | Move::WhInvertGen(i) | Move::RotateRelator(i, _) => ([i, i], false),
            Move::ConjugateByGen(i, j, _) => ([i, j], false),
            Move::MultiplyRelator(i, j)
            | Move::WhLeftMul(i, j, _)
            | Move::WhRightMul(i, j, _)
            | Move::WhConjGen(i, j) => ([i, j], true),
        };
        if indices.iter().any(|&k| k >= rank) {
            return Err(MoveError::OutOfRank(*self, rank));
        }
        if needs_distinct && indices[0] == indices[1] {
            return Err(MoveError::SameIndex(*self));
        }
        Ok(())
    }

    /// Generator images for a Whitehead move, `None` for AC moves.
    pub fn automorphism_images(&self, rank: usize) -> Option<Vec<Word>> {
        let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
        match *self {
            Move::WhInvertGen(i) => images[i] = Word::letter(Letter::neg(i)),
            Move::WhLeftMul(i, j, s) => {
                images[i] = Word::from_letters([Letter::new(j, s), Letter::pos(i)])
            }
            Move::WhRightMul(i, j, s) => {
                images[i] = Word::from_letters([Letter::pos(i), Letter::new(j, s)])
            }
            Move::WhConjGen(i, j) => {
                images[i] = Word::from_letters([Letter::neg(j), Letter::pos(i), Letter::pos(j)])
            }
            _ => return None,
        }
        Some(images)
    }

    /// Relator indices permuted by `perm` (AC moves only; Whitehead moves act on
    /// generators and are unchanged).
    pub fn relabel_relators(&self, perm: &[usize]) -> Move {
        match *self {
            Move::InvertRelator(i) => Move::InvertRelator(perm[i]),
            Move::MultiplyRelator(i, j) => Move::MultiplyRelator(perm[i], perm[j]),
            Move::ConjugateByGen(i, g, s) => Move::ConjugateByGen(perm[i], g, s),
            Move::RotateRelator(i, d) => Move::RotateRelator(perm[i], d),
            m => m,
        }
    }
}

fn gen_char(g: usize) -> char {
    Letter::pos(g).to_char().unwrap_or('?')
}

fn sign_str(s: bool) -> &'static str {
    if s {
        "+1"
    } else {
        "-1"
    }
}

/// Certificate line syntax.
impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::InvertRelator(i) => write!(f, "inv {i}"),
            Move::MultiplyRelator(i, j) => write!(f, "mul {i} {j}"),
            Move::ConjugateByGen(i, g, s) => write!(f, "conj {i} {} {}", gen_char(g), sign_str(s)),
            Move::RotateRelator(i, d) => write!(
                f,
                "rot {i} {}",
                match d {
                    Direction::Left => "L",
                    Direction::Right => "R",
                }
            ),
            Move::WhInvertGen(i) => write!(f, "winv {}", gen_char(i)),
            Move::WhLeftMul(i, j, s) => {
                write!(f, "wlmul {} {} {}", gen_char(i), gen_char(j), sign_str(s))
            }
            Move::WhRightMul(i, j, s) => {
                write!(f, "wrmul {} {} {}", gen_char(i), gen_char(j), sign_str(s))
            }
            Move::WhConjGen(i, j) => write!(f, "wconj {} {}", gen_char(i), gen_char(j)),
        }
    }
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| MoveError::Syntax(line.to_string(), msg.to_string());
        let parts: Vec<&str> = line.split_whitespace().collect();
        let index = |s: &str| s.parse::<usize>().map_err(|_| err("expected a relator index"));
        let generator = |s: &str| {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => Ok((c as u8 - b'a') as usize),
                _ => Err(err("expected a lowercase generator letter")),
            }
        };
        let sign = |s: &str| match s {
            "+1" | "1" => Ok(true),
            "-1" => Ok(false),
            _ => Err(err("expected +1 or -1")),
        };
        let arity = |n: usize| {
            if parts.len() == n + 1 {
                Ok(())
            } else {
                Err(err(&format!("expected {n} arguments")))
            }
        };
        let Some(&op) = parts.first() else {
            return Err(err("empty move"));
        };
        match op {
            "inv" => {
                arity(1)?;
                Ok(Move::InvertRelator(index(parts[1])?))
            }
            "mul" => {
                arity(2)?;
                Ok(Move::MultiplyRelator(index(parts[1])?, index(parts[2])?))
            }
            "conj" => {
                arity(3)?;
                Ok(Move::ConjugateByGen(
                    index(parts[1])?,
                    generator(parts[2])?,
                    sign(parts[3])?,
                ))
            }
            "rot" => {
                arity(2)?;
                let d = match parts[2] {
                    "L" => Direction::Left,
                    "R" => Direction::Right,
                    _ => return Err(err("expected L or R")),
                };
                Ok(Move::RotateRelator(index(parts[1])?, d))
            }
            "winv" => {
                arity(1)?;
                Ok(Move::WhInvertGen(generator(parts[1])?))
            }
            "wlmul" | "wrmul" => {
                arity(3)?;
                let (i, j, s) = (generator(parts[1])?, generator(parts[2])?, sign(parts[3])?);
                Ok(if op == "wlmul" {
                    Move::WhLeftMul(i, j, s)
                } else {
                    Move::WhRightMul(i, j, s)
                })
            }
            "wconj" => {
                arity(2)?;
                Ok(Move::WhConjGen(generator(parts[1])?, generator(parts[2])?))
            }
            _ => Err(err("unknown move")),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All moves for one rank, in a frozen order: inv, mul, conj, rot, then
/// winv, wlmul, wrmul, wconj; each block row-major in `(i, j, sign)` with
/// `+1` before `-1` and `L` before `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTable {
    rank: usize,
    moves: Vec<Move>,
    ac_count: usize,
}

impl MoveTable {
    pub fn new(rank: usize) -> Result<Self, MoveError> {
        if rank == 0 {
            return Err(MoveError::ZeroRank);
        }
        let n = rank;
        let signs = [true, false];
        let mut moves = Vec::with_capacity(8 * n * n - 2 * n);
        moves.extend((0..n).map(Move::InvertRelator));
        for i in 0..n {
            moves.extend((0..n).filter(|&j| j != i).map(|j| Move::MultiplyRelator(i, j)));
        }
        for i in 0..n {
            for j in 0..n {
                moves.extend(signs.iter().map(|&s| Move::ConjugateByGen(i, j, s)));
            }
        }
        for i in 0..n {
            moves.push(Move::RotateRelator(i, Direction::Left));
            moves.push(Move::RotateRelator(i, Direction::Right));
        }
        let ac_count = moves.len();
        moves.extend((0..n).map(Move::WhInvertGen));
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                moves.extend(signs.iter().map(|&s| Move::WhLeftMul(i, j, s)));
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                moves.extend(signs.iter().map(|&s| Move::WhRightMul(i, j, s)));
            }
        }
        for i in 0..n {
            moves.extend((0..n).filter(|&j| j != i).map(|j| Move::WhConjGen(i, j)));
        }
        Ok(MoveTable {
            rank,
            moves,
            ac_count,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of leading pure-AC entries (inv, mul, conj, rot).
    pub fn ac_count(&self) -> usize {
        self.ac_count
    }

    pub fn get(&self, index: usize) -> Option<Move> {
        self.moves.get(index).copied()
    }

    pub fn index_of(&self, m: &Move) -> Option<usize> {
        self.moves.iter().position(|x| x == m)
    }
}

/// Applies `m` in place. Indices must be valid for the tuple.
pub fn apply_move_mut(t: &mut RelatorTuple, m: &Move) {
    match *m {
        Move::InvertRelator(i) => t[i] = t[i].inverse(),
        Move::MultiplyRelator(i, j) => t[i] = t[i].multiply(&t[j]),
        Move::ConjugateByGen(i, g, s) => {
            t[i] = t[i].conjugate(&Word::letter(Letter::new(g, s)));
        }
        Move::RotateRelator(i, d) => t[i] = t[i].rotate(d),
        _ => {
            let images = m.automorphism_images(t.len()).expect("whitehead move");
            for r in t.iter_mut() {
                *r = r.substitute(&images);
            }
        }
    }
}

pub fn apply_move(t: &[Word], m: &Move) -> RelatorTuple {
    let mut out = t.to_vec();
    apply_move_mut(&mut out, m);
    out
}

pub fn apply_sequence(t: &[Word], seq: &[Move]) -> RelatorTuple {
    let mut out = t.to_vec();
    for m in seq {
        apply_move_mut(&mut out, m);
    }
    out
}

/// A sequence undoing `m`. Exact on every tuple except for rotations of a
/// relator that is not cyclically reduced, where the lost conjugator cannot
/// be recovered; see [`exact_inverse`].
pub fn invert_move(m: &Move) -> Vec<Move> {
    match *m {
        Move::InvertRelator(_) | Move::WhInvertGen(_) => vec![*m],
        Move::MultiplyRelator(i, j) => vec![
            Move::InvertRelator(j),
            Move::MultiplyRelator(i, j),
            Move::InvertRelator(j),
        ],
        Move::ConjugateByGen(i, g, s) => vec![Move::ConjugateByGen(i, g, !s)],
        Move::RotateRelator(i, d) => vec![Move::RotateRelator(i, d.opposite())],
        Move::WhLeftMul(i, j, s) => vec![Move::WhLeftMul(i, j, !s)],
        Move::WhRightMul(i, j, s) => vec![Move::WhRightMul(i, j, !s)],
        // x_i -> x_j x_i, then x_i -> x_i x_j⁻¹
        Move::WhConjGen(i, j) => vec![Move::WhLeftMul(i, j, true), Move::WhRightMul(i, j, false)],
    }
}

/// Generator conjugations realizing `r_i -> w r_i w⁻¹`, innermost first.
pub fn conjugation_moves(i: usize, w: &Word) -> Vec<Move> {
    w.letters()
        .iter()
        .rev()
        .map(|l| Move::ConjugateByGen(i, l.generator(), l.is_positive()))
        .collect()
}

/// Like [`invert_move`], but exact for the particular tuple `before` that
/// `m` was applied to.
pub fn exact_inverse(before: &[Word], m: &Move) -> Vec<Move> {
    if let Move::RotateRelator(i, d) = *m {
        let (_, c) = before[i].cyclic_reduce();
        let mut out = vec![Move::RotateRelator(i, d.opposite())];
        out.extend(conjugation_moves(i, &c));
        return out;
    }
    invert_move(m)
}

/// Exact inverse of a whole sequence applied from `start`.
pub fn invert_sequence_from(start: &[Word], seq: &[Move]) -> Vec<Move> {
    let mut t = start.to_vec();
    let mut pieces = Vec::with_capacity(seq.len());
    for m in seq {
        pieces.push(exact_inverse(&t, m));
        apply_move_mut(&mut t, m);
    }
    pieces.into_iter().rev().flatten().collect()
}
