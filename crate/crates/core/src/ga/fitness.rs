use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::certify::{longest_relator, shortest_subtuple};
use crate::freegroup::Word;
use crate::presentation::canonical_key;
use crate::whitehead::{gcd, is_basis_part};

use super::config::FitnessKind;

/// A non-negative rational `num / den`; lower is fitter.
#[derive(Clone, Copy, Debug, Eq)]
pub struct Fitness {
    pub num: u64,
    pub den: u64,
}

impl Fitness {
    pub fn integer(v: u64) -> Self {
        Fitness { num: v, den: 1 }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Fitness {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Ord for Fitness {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}", self.value())
        }
    }
}

impl Serialize for Fitness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fitness", 3)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.serialize_field("value", &self.value())?;
        st.end()
    }
}

pub fn fit1(t: &[Word]) -> u64 {
    if t.len() < 2 {
        return t.iter().map(|w| w.len() as u64).sum();
    }
    let drop = longest_relator(t);
    t.iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, w)| w.len() as u64)
        .sum()
}

pub fn fit2(t: &[Word]) -> u64 {
    t.iter().map(|w| w.len() as u64).sum()
}

pub fn fit3(t: &[Word], k: usize, m: u64) -> Fitness {
    Fitness {
        num: fit2(t) * m + k as u64,
        den: m,
    }
}

/// Fitness of a replayed chromosome of length `k`.
pub fn evaluate(kind: FitnessKind, t: &[Word], k: usize, m: u64) -> Fitness {
    match kind {
        FitnessKind::Fit1 => Fitness::integer(fit1(t)),
        FitnessKind::Fit2 => Fitness::integer(fit2(t)),
        FitnessKind::Fit3 => fit3(t, k, m),
    }
}

/// The value given to replays that exceeded the length cap.
pub fn sentinel(kind: FitnessKind, cap: usize, k: usize, m: u64) -> Fitness {
    let v = cap as u64 + 1;
    match kind {
        FitnessKind::Fit3 => Fitness {
            num: v * m + k as u64,
            den: m,
        },
        _ => Fitness::integer(v),
    }
}

/// Whether `t` meets the termination condition for `kind`.
pub fn is_terminal(kind: FitnessKind, t: &[Word], independent: bool) -> bool {
    let n = t.len();
    match kind {
        FitnessKind::Fit2 | FitnessKind::Fit3 => fit2(t) == n as u64 && canonical_key(t).is_trivial(n),
        FitnessKind::Fit1 => {
            if n == 1 {
                return true;
            }
            let sub = shortest_subtuple(t);
            // each word of a basis has coprime exponent sums
            let rank = t.iter().map(Word::rank_used).max().unwrap_or(0);
            for w in &sub {
                if w.is_empty() || w.exponent_sums(rank).iter().fold(0, |g, &s| gcd(g, s)) != 1 {
                    return false;
                }
            }
            is_basis_part(&sub, !independent)
        }
    }
}
