//! Counting the presentations of the two infinite series up to a total
//! length bound.
//!
//! Series (3) is `AK(n)`, `n ≥ 2`. Series (4) is `<x,y ; x⁻¹yⁿx y^-(n+1), x w⁻¹>`
//! with `n ≥ 1` and `w` of zero exponent sum in `x`. The second relator `v = x w⁻¹`
//! determines `w`, so series (4) is enumerated through reduced words `v` with
//! `x`-exponent sum 1. Lengths are lengths of freely reduced relators.
//!
//! Three normalizations are reported for series (4):
//! - `words`: distinct reduced `v`
//! - `cyclic`: distinct cyclically reduced `v` up to rotation
//! - `keys`: distinct canonical keys of the whole presentation

use std::collections::BTreeSet;

use serde::Serialize;

use crate::freegroup::{Letter, Word};
use crate::presentation::{canonical_key, CanonicalKey};
use crate::tools::catalog::{ak, miller_schupp};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub n: usize,
    pub words: usize,
    pub cyclic: usize,
    pub keys: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub bound: usize,
    /// Values of `n` with `AK(n)` within the bound.
    pub series3: Vec<usize>,
    pub series4: Vec<SeriesRow>,
    pub series4_words: usize,
    pub series4_cyclic: usize,
    pub series4_keys: usize,
    /// Distinct keys over both series together.
    pub combined_keys: usize,
}

/// Reduced words in `a, b` of length exactly `len`.
fn reduced_words(len: usize, out: &mut Vec<Word>) {
    fn rec(prefix: &mut Vec<Letter>, len: usize, out: &mut Vec<Word>) {
        if prefix.len() == len {
            out.push(Word::from_letters(prefix.iter().copied()));
            return;
        }
        for l in [Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)] {
            if prefix.last() == Some(&l.inverse()) {
                continue;
            }
            prefix.push(l);
            rec(prefix, len, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, out);
}

pub fn census(bound: usize) -> Census {
    let mut c = Census {
        bound,
        ..Census::default()
    };
    let mut all_keys: BTreeSet<CanonicalKey> = BTreeSet::new();
    let mut n = 2;
    while 2 * n + 1 + 6 <= bound {
        c.series3.push(n);
        all_keys.insert(ak(n).canonical_key());
        n += 1;
    }
    let mut s4_keys = BTreeSet::new();
    let mut n = 1;
    while 2 * n + 3 < bound {
        let budget = bound - (2 * n + 3);
        let mut words = Vec::new();
        for len in 1..=budget {
            reduced_words(len, &mut words);
        }
        words.retain(|v| v.exponent_sums(2)[0] == 1);
        let mut cyclic = BTreeSet::new();
        let mut keys = BTreeSet::new();
        for v in &words {
            if v.is_cyclically_reduced() {
                cyclic.insert(v.canonical_cyclic());
            }
            // v = x w⁻¹  <=>  w = v⁻¹ x
            let w = v.inverse().multiply(&Word::generator(0));
            let p = miller_schupp(n, &w);
            debug_assert_eq!(&p.relators()[1], v);
            keys.insert(canonical_key(p.relators()));
        }
        c.series4.push(SeriesRow {
            n,
            words: words.len(),
            cyclic: cyclic.len(),
            keys: keys.len(),
        });
        s4_keys.extend(keys);
        n += 1;
    }
    c.series4_words = c.series4.iter().map(|r| r.words).sum();
    c.series4_cyclic = c.series4.iter().map(|r| r.cyclic).sum();
    c.series4_keys = s4_keys.len();
    all_keys.extend(s4_keys);
    c.combined_keys = all_keys.len();
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series3_at_twelve_is_ak2_only() {
        assert_eq!(census(12).series3, vec![2]);
        assert!(census(8).series3.is_empty());
    }

    #[test]
    fn tiny_bound_by_hand() {
        // n = 1: r0 has length 5, v has length 1 with x-sum 1: only "a"
        let c = census(6);
        assert_eq!(c.series4, vec![SeriesRow { n: 1, words: 1, cyclic: 1, keys: 1 }]);
        // length 2 adds ab, aB, ba, Ba
        let c = census(7);
        assert_eq!(c.series4[0].words, 5);
        assert_eq!(c.series4[0].cyclic, 3);
    }

    #[test]
    fn counts_grow_with_bound() {
        let a = census(9);
        let b = census(10);
        assert!(b.series4_words > a.series4_words);
        assert!(b.combined_keys >= a.combined_keys);
    }
}
