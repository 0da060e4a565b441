//! Words in a free group of finite rank.
//!
//! A [`Word`] is always stored freely reduced. Generators are numbered from
//! zero; the surface syntax spells generator `i` as the `i`-th lowercase
//! ASCII letter and its inverse as the matching uppercase letter.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest rank that has a single-letter spelling.
pub const MAX_LETTER_RANK: usize = 26;

/// A generator or its inverse, encoded as `±(generator + 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, positive: bool) -> Self {
        let g = generator as i32 + 1;
        Letter(if positive { g } else { -g })
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position in the total order `a < A < b < B < ...`.
    fn order_key(self) -> u32 {
        2 * self.generator() as u32 + u32::from(!self.is_positive())
    }

    pub fn to_char(self) -> Option<char> {
        let g = self.generator();
        if g >= MAX_LETTER_RANK {
            return None;
        }
        let c = b'a' + g as u8;
        Some(if self.is_positive() {
            c as char
        } else {
            c.to_ascii_uppercase() as char
        })
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::pos((c as u8 - b'a') as usize))
        } else if c.is_ascii_uppercase() {
            Some(Letter::neg((c as u8 - b'A') as usize))
        } else {
            None
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "x{}^{}", self.generator() + 1, self.sign()),
        }
    }
}

/// Direction of a one-letter cyclic rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `x v -> v x`
    Left,
    /// `v x -> x v`
    Right,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    Word { letters: out }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: usize) -> Self {
        Word::letter(Letter::pos(g))
    }

    /// `x_g^k`, any sign of `k`.
    pub fn power(g: usize, k: i32) -> Self {
        let l = Letter::new(g, k >= 0);
        Word {
            letters: vec![l; k.unsigned_abs() as usize],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        reduce(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// One more than the largest generator index used, or 0.
    pub fn rank_used(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        out.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `w · self · w⁻¹`.
    pub fn conjugate(&self, w: &Word) -> Word {
        w.multiply(self).multiply(&w.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            letters: self.letters[..k].to_vec(),
        };
        (core, conjugator)
    }

    /// Length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        n - 2 * k
    }

    /// Rotates the cyclically reduced core by one letter.
    pub fn rotate(&self, direction: Direction) -> Word {
        let (mut core, _) = self.cyclic_reduce();
        if core.len() > 1 {
            match direction {
                Direction::Left => core.letters.rotate_left(1),
                Direction::Right => core.letters.rotate_right(1),
            }
        }
        core
    }

    /// The word `c` with `rotate(self, direction) = c · self · c⁻¹`.
    pub fn rotation_conjugator(&self, direction: Direction) -> Word {
        let (core, c) = self.cyclic_reduce();
        let cinv = c.inverse();
        if core.len() <= 1 {
            return cinv;
        }
        let pivot = match direction {
            Direction::Left => core.first().unwrap().inverse(),
            Direction::Right => core.last().unwrap(),
        };
        Word::letter(pivot).multiply(&cinv)
    }

    /// Replaces every `x_i^ε` by `images[i]^ε`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let inverses: Vec<Word> = images.iter().map(Word::inverse).collect();
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.letters {
            let img = if l.is_positive() {
                &images[l.generator()]
            } else {
                &inverses[l.generator()]
            };
            for &m in &img.letters {
                push_reduced(&mut out, m);
            }
        }
        Word { letters: out }
    }

    /// Exponent sum of every generator below `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.letters {
            if l.generator() < rank {
                sums[l.generator()] += i64::from(l.sign());
            }
        }
        sums
    }

    /// Least rotation, in letter order, of a cyclically reduced word.
    fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
        let n = letters.len();
        if n == 0 {
            return Vec::new();
        }
        // two-candidate scan for the minimal rotation
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let a = letters[(i + k) % n];
            let b = letters[(j + k) % n];
            match a.cmp(&b) {
                Ordering::Equal => k += 1,
                Ordering::Greater => {
                    i += k + 1;
                    if i == j {
                        i += 1;
                    }
                    k = 0;
                }
                Ordering::Less => {
                    j += k + 1;
                    if i == j {
                        j += 1;
                    }
                    k = 0;
                }
            }
        }
        let start = i.min(j);
        letters[start..].iter().chain(&letters[..start]).copied().collect()
    }

    /// Representative of the cyclic word of `self` up to inversion: the
    /// least rotation of the core or of its inverse.
    pub fn canonical_cyclic(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        let fwd = Word::least_rotation(&core.letters);
        let inv: Vec<Letter> = core.letters.iter().rev().map(|l| l.inverse()).collect();
        let bwd = Word::least_rotation(&inv);
        Word {
            letters: fwd.min(bwd),
        }
    }

    /// Finds `w` with `other = w · self · w⁻¹`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Word) -> Option<Word> {
        let (core_a, c) = self.cyclic_reduce();
        let (core_b, d) = other.cyclic_reduce();
        if core_a.len() != core_b.len() {
            return None;
        }
        let n = core_a.len();
        if n == 0 {
            return Some(Word::empty());
        }
        // core_b = p⁻¹ core_a p where core_a = p q, core_b = q p
        for s in 0..n {
            let rotated = core_a.letters[s..]
                .iter()
                .chain(&core_a.letters[..s])
                .copied();
            if rotated.eq(core_b.letters.iter().copied()) {
                let p = Word {
                    letters: core_a.letters[..s].to_vec(),
                };
                return Some(d.multiply(&p.inverse()).multiply(&c.inverse()));
            }
        }
        None
    }

    /// Spelling with spaces between letters, as used in replay output.
    pub fn spaced(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let s = self.to_string();
        let mut out = String::with_capacity(2 * s.len());
        for (k, c) in s.chars().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            match l.to_char() {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "[x{}^{}]", l.generator() + 1, l.sign())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Error from parsing the single-letter word syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordSyntaxError {
    #[error("unexpected character {found:?} at column {column}")]
    UnexpectedChar { found: char, column: usize },
    #[error("'^' at column {column} is not preceded by a letter")]
    DanglingCaret { column: usize },
    #[error("missing exponent after '^' at column {column}")]
    MissingExponent { column: usize },
    #[error("exponent at column {column} is too large")]
    ExponentOverflow { column: usize },
}

impl WordSyntaxError {
    pub fn column(&self) -> usize {
        match *self {
            WordSyntaxError::UnexpectedChar { column, .. }
            | WordSyntaxError::DanglingCaret { column }
            | WordSyntaxError::MissingExponent { column }
            | WordSyntaxError::ExponentOverflow { column } => column,
        }
    }
}

/// Parses e.g. `aabBB`, `a^-3 b`, or `1` (the empty word). Columns in
/// errors are 1-based.
pub fn parse_word(text: &str) -> Result<Word, WordSyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut raw: Vec<Letter> = Vec::new();
    let mut last: Option<Letter> = None;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '1' {
            last = None;
            i += 1;
            continue;
        }
        if c == '^' {
            let base = last.ok_or(WordSyntaxError::DanglingCaret { column })?;
            i += 1;
            let mut negative = false;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                negative = chars[i] == '-';
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(WordSyntaxError::MissingExponent { column });
            }
            let digits: String = chars[start..i].iter().collect();
            let k: usize = digits
                .parse()
                .map_err(|_| WordSyntaxError::ExponentOverflow { column })?;
            if k > 1_000_000 {
                return Err(WordSyntaxError::ExponentOverflow { column });
            }
            // the base letter was already pushed once
            raw.pop();
            let l = if negative { base.inverse() } else { base };
            raw.extend(std::iter::repeat_n(l, k));
            last = None;
            continue;
        }
        match Letter::from_char(c) {
            Some(l) => {
                raw.push(l);
                last = Some(l);
            }
            None => return Err(WordSyntaxError::UnexpectedChar { found: c, column }),
        }
        i += 1;
    }
    Ok(reduce(raw))
}

impl FromStr for Word {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&Word::letter(*self))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}
