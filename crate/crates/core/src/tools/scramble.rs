//! Random move sequences applied to a presentation, with the certificate
//! that undoes them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{Certificate, Terminal};
use crate::moves::{apply_move_mut, invert_sequence_from, Move, MoveTable};
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scrambled {
    pub presentation: Presentation,
    /// The moves that were applied to the input.
    pub applied: Vec<Move>,
    /// Verifies `presentation` back to the input.
    pub certificate: Certificate,
}

/// Applies `length` moves drawn uniformly from the inversions, products and
/// generator conjugations (the `3n²` moves without rotations), or from the
/// whole table when `full_table` is set.
pub fn scramble_with(p: &Presentation, length: usize, seed: u64, full_table: bool) -> Scrambled {
    let table = MoveTable::new(p.rank()).expect("presentation rank is positive");
    let pool = if full_table {
        table.moves()
    } else {
        // rotations are the last 2n moves of the AC block
        &table.moves()[..table.ac_count() - 2 * p.rank()]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = p.relators().clone();
    let mut applied = Vec::with_capacity(length);
    for _ in 0..length {
        let m = pool[rng.gen_range(0..pool.len() as u64) as usize];
        apply_move_mut(&mut t, &m);
        applied.push(m);
    }
    let moves = invert_sequence_from(p.relators(), &applied);
    let presentation = Presentation::new(p.rank(), t).expect("rank preserved");
    let certificate = Certificate::new(
        presentation.clone(),
        moves,
        Terminal::TargetPresentation(p.clone()),
    );
    Scrambled {
        presentation,
        applied,
        certificate,
    }
}

pub fn scramble(p: &Presentation, length: usize, seed: u64) -> Scrambled {
    scramble_with(p, length, seed, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify;

    #[test]
    fn zero_length_is_identity() {
        let p = Presentation::trivial(2);
        let s = scramble(&p, 0, 1);
        assert_eq!(s.presentation, p);
        assert!(s.certificate.moves.is_empty());
        assert!(verify(&s.certificate).accepted);
    }

    #[test]
    fn round_trip_verifies() {
        for rank in 1..=3 {
            for seed in 0..40 {
                let p = Presentation::trivial(rank);
                let s = scramble(&p, 12, seed);
                assert!(s.applied.iter().all(Move::is_ac));
                assert!(verify(&s.certificate).accepted, "rank {rank} seed {seed}");
                let f = scramble_with(&p, 8, seed, true);
                assert!(verify(&f.certificate).accepted, "full rank {rank} seed {seed}");
            }
        }
    }

    #[test]
    fn seeded() {
        let p = Presentation::trivial(2);
        assert_eq!(scramble(&p, 10, 5), scramble(&p, 10, 5));
        assert_ne!(scramble(&p, 10, 5).applied, scramble(&p, 10, 6).applied);
    }
}
