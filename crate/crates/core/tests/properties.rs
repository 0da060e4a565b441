use proptest::prelude::*;

use actriv::freegroup::reduce;
use actriv::moves::{apply_move, apply_sequence, exact_inverse, invert_move};
use actriv::presentation::{canonical_key, total_length, trivial_tuple};
use actriv::whitehead::{is_primitive, minimize};
use actriv::{Direction, Letter, Move, MoveTable, Word};

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, s)| Letter::new(g, s)).collect())
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(reduce)
}

fn tuple(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(rank, max_len), rank)
}

fn table_move(rank: usize) -> impl Strategy<Value = Move> {
    let table = MoveTable::new(rank).unwrap();
    (0..table.len()).prop_map(move |k| table.get(k).unwrap())
}

fn table_range(rank: usize, lo: usize, hi: Option<usize>) -> impl Strategy<Value = Move> {
    let table = MoveTable::new(rank).unwrap();
    let hi = hi.unwrap_or(table.len());
    (lo..hi).prop_map(move |k| table.get(k).unwrap())
}

fn det2(t: &[Word]) -> i64 {
    let a = t[0].exponent_sums(2);
    let b = t[1].exponent_sums(2);
    a[0] * b[1] - a[1] * b[0]
}

proptest! {
    #[test]
    fn reduction(raw in letters(3, 20)) {
        let w = reduce(raw.clone());
        prop_assert!(w.len() <= raw.len());
        prop_assert_eq!(reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn group_laws(u in word(3, 10), v in word(3, 10), x in word(3, 10)) {
        prop_assert!(u.multiply(&v).len() <= u.len() + v.len());
        prop_assert_eq!(u.multiply(&v).multiply(&x), u.multiply(&v.multiply(&x)));
        prop_assert!(u.multiply(&u.inverse()).is_empty());
        prop_assert!(u.conjugate(&v).len() <= u.len() + 2 * v.len());
        prop_assert_eq!(u.conjugate(&v).conjugate(&v.inverse()), u);
    }

    #[test]
    fn rotations_cycle(u in word(2, 12)) {
        let core = u.cyclic_reduce().0;
        let mut r = core.clone();
        for _ in 0..core.len() {
            let next = r.rotate(Direction::Left);
            prop_assert_eq!(next.len(), r.len());
            r = next;
        }
        prop_assert_eq!(r, core.clone());
        prop_assert_eq!(core.rotate(Direction::Left).rotate(Direction::Right), core);
        for d in [Direction::Left, Direction::Right] {
            prop_assert_eq!(u.conjugate(&u.rotation_conjugator(d)), u.rotate(d));
        }
    }

    #[test]
    fn substitution_is_homomorphism(u in word(2, 8), v in word(2, 8), images in tuple(2, 5)) {
        prop_assert_eq!(
            u.multiply(&v).substitute(&images),
            u.substitute(&images).multiply(&v.substitute(&images))
        );
    }

    #[test]
    fn key_symmetries(t in tuple(3, 8), w in word(3, 4), i in 0usize..3, d in any::<bool>(), perm in Just([2usize, 0, 1])) {
        let k = canonical_key(&t);
        let mut u = t.clone();
        u[i] = u[i].inverse();
        prop_assert_eq!(canonical_key(&u), k.clone());
        let mut u = t.clone();
        u[i] = u[i].conjugate(&w);
        prop_assert_eq!(canonical_key(&u), k.clone());
        let mut u = t.clone();
        u[i] = u[i].rotate(if d { Direction::Left } else { Direction::Right });
        prop_assert_eq!(canonical_key(&u), k.clone());
        let u: Vec<Word> = perm.iter().map(|&j| t[j].clone()).collect();
        prop_assert_eq!(canonical_key(&u), k);
    }

    #[test]
    fn invert_move_undoes(t in tuple(2, 10), m in table_move(2)) {
        let after = apply_move(&t, &m);
        prop_assert_eq!(apply_sequence(&after, &exact_inverse(&t, &m)), t.clone());
        let cyclic = t.iter().all(Word::is_cyclically_reduced);
        if cyclic || !matches!(m, Move::RotateRelator(..)) {
            prop_assert_eq!(apply_sequence(&after, &invert_move(&m)), t);
        }
    }

    #[test]
    fn lemma_one_commutation(t in tuple(2, 10), ac in table_range(2, 0, Some(4)), wh in table_range(2, 16, None)) {
        prop_assert!(matches!(ac, Move::InvertRelator(_) | Move::MultiplyRelator(..)));
        prop_assert!(wh.is_whitehead());
        let left = apply_move(&apply_move(&t, &ac), &wh);
        let right = apply_move(&apply_move(&t, &wh), &ac);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn determinant_preserved(seq in prop::collection::vec(table_move(2), 0..12)) {
        let t = apply_sequence(&trivial_tuple(2), &seq);
        prop_assert_eq!(det2(&t).abs(), 1);
    }

    #[test]
    fn length_behaviour(t in tuple(2, 10), i in 0usize..2) {
        let u = apply_move(&t, &Move::InvertRelator(i));
        prop_assert_eq!(total_length(&u), total_length(&t));
        let core = t[i].cyclic_reduce().0;
        for d in [Direction::Left, Direction::Right] {
            prop_assert_eq!(core.rotate(d).len(), core.len());
        }
    }

    #[test]
    fn whitehead_descent(u in word(2, 10), c in word(2, 4)) {
        let m = minimize(&u);
        prop_assert!(m.total <= u.cyclic_len());
        let p = is_primitive(&u);
        prop_assert_eq!(p, is_primitive(&u.inverse()));
        prop_assert_eq!(p, is_primitive(&u.conjugate(&c)));
        if p {
            let s = u.exponent_sums(2);
            let g = (1..=s[0].abs().max(s[1].abs())).filter(|d| s[0] % d == 0 && s[1] % d == 0).max();
            prop_assert_eq!(g, Some(1));
        }
    }
}

#[test]
fn table_sizes() {
    for n in 1..=6 {
        let t = MoveTable::new(n).unwrap();
        assert_eq!(t.len(), 8 * n * n - 2 * n);
    }
    assert_eq!(MoveTable::new(2).unwrap().ac_count(), 16);
}
