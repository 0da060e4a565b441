//! Exhaustive breadth-first search over the move table and the
//! meet-in-the-middle search built on it. States are indexed by canonical key.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::certify::{verify, Certificate, Terminal};
use crate::freegroup::Word;
use crate::moves::{apply_move, conjugation_moves, invert_sequence_from, Move, MoveTable};
use crate::presentation::{canonical_key, CanonicalKey, Presentation, RelatorTuple};

/// Which states the breadth-first search treats as already visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    /// Exact relator tuples. Complete: every tuple within the radius is reached.
    #[default]
    Exact,
    /// Canonical keys only. Much smaller, but conjugates that are merged
    /// multiply differently, so some tuples within the radius are missed.
    Key,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop once this many states are stored (ball and forward search together).
    pub node_budget: usize,
    /// Worker threads for level expansion; 1 expands sequentially.
    pub threads: usize,
    pub dedup: Dedup,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 5_000_000,
            threads: 1,
            dedup: Dedup::Exact,
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    tuple: RelatorTuple,
    parent: Option<(u32, Move)>,
}

/// Keys reached from a center within some radius, each with the first tuple
/// that produced it.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Presentation,
    pub radius: usize,
    /// Number of states first reached at each distance `0..=radius`.
    pub level_sizes: Vec<usize>,
    pub truncated: bool,
    pub nodes_expanded: usize,
    nodes: Vec<Node>,
    index: HashMap<CanonicalKey, u32>,
}

impl Ball {
    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Number of stored states; equals `len()` under key dedup.
    pub fn states(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.index.keys()
    }

    /// The stored tuple for `key` and the moves taking the center to it.
    pub fn witness(&self, key: &CanonicalKey) -> Option<(&RelatorTuple, Vec<Move>)> {
        let &k = self.index.get(key)?;
        Some((&self.nodes[k as usize].tuple, path(&self.nodes, k)))
    }
}

fn path(nodes: &[Node], mut k: u32) -> Vec<Move> {
    let mut out = Vec::new();
    while let Some((p, m)) = nodes[k as usize].parent {
        out.push(m);
        k = p;
    }
    out.reverse();
    out
}

type Children = Vec<(Move, RelatorTuple, CanonicalKey)>;

fn children(t: &RelatorTuple, table: &MoveTable) -> Children {
    table
        .moves()
        .iter()
        .map(|m| {
            let u = apply_move(t, m);
            let k = canonical_key(&u);
            (*m, u, k)
        })
        .collect()
}

/// Children of every frontier node, in frontier order.
fn expand(nodes: &[Node], frontier: &[u32], table: &MoveTable, threads: usize) -> Vec<Children> {
    #[cfg(feature = "parallel")]
    if threads > 1 && frontier.len() > 64 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(|| {
                frontier
                    .par_iter()
                    .map(|&k| children(&nodes[k as usize].tuple, table))
                    .collect()
            });
        }
    }
    let _ = threads;
    frontier
        .iter()
        .map(|&k| children(&nodes[k as usize].tuple, table))
        .collect()
}

/// Level-synchronous search state shared by the ball and the forward search.
struct Bfs {
    nodes: Vec<Node>,
    /// First node reaching each key.
    index: HashMap<CanonicalKey, u32>,
    /// Visited tuples under exact dedup.
    seen: HashSet<RelatorTuple>,
    dedup: Dedup,
    frontier: Vec<u32>,
    level_sizes: Vec<usize>,
    nodes_expanded: usize,
    peak_frontier: usize,
}

impl Bfs {
    fn new(start: RelatorTuple, dedup: Dedup) -> Self {
        let key = canonical_key(&start);
        let mut index = HashMap::new();
        index.insert(key, 0);
        let mut seen = HashSet::new();
        if dedup == Dedup::Exact {
            seen.insert(start.clone());
        }
        Bfs {
            seen,
            dedup,
            nodes: vec![Node {
                tuple: start,
                parent: None,
            }],
            index,
            frontier: vec![0],
            level_sizes: vec![1],
            nodes_expanded: 0,
            peak_frontier: 1,
        }
    }

    /// Expands one level. `on_new` sees each newly reached key in order and
    /// may stop the search by returning `true`. Returns (stopped, truncated).
    fn step(
        &mut self,
        table: &MoveTable,
        limits: &SearchLimits,
        budget_used: usize,
        mut on_new: impl FnMut(u32, &CanonicalKey) -> bool,
    ) -> (bool, bool) {
        let kids = expand(&self.nodes, &self.frontier, table, limits.threads);
        let mut next = Vec::new();
        for (&parent, list) in self.frontier.iter().zip(kids) {
            self.nodes_expanded += 1;
            for (m, tuple, key) in list {
                let new_key = !self.index.contains_key(&key);
                let fresh = match self.dedup {
                    Dedup::Key => new_key,
                    Dedup::Exact => !self.seen.contains(&tuple),
                };
                if !fresh {
                    continue;
                }
                if budget_used + self.nodes.len() >= limits.node_budget {
                    self.level_sizes.push(next.len());
                    return (false, true);
                }
                let id = self.nodes.len() as u32;
                if self.dedup == Dedup::Exact {
                    self.seen.insert(tuple.clone());
                }
                self.nodes.push(Node {
                    tuple,
                    parent: Some((parent, m)),
                });
                next.push(id);
                if !new_key {
                    continue;
                }
                self.index.insert(key.clone(), id);
                if on_new(id, &key) {
                    self.level_sizes.push(next.len());
                    return (true, false);
                }
            }
        }
        self.level_sizes.push(next.len());
        self.peak_frontier = self.peak_frontier.max(next.len());
        self.frontier = next;
        (false, false)
    }
}

/// Breadth-first ball of radius `radius` around `center` over the full move
/// table, in move-table order.
pub fn grow_ball(center: &Presentation, radius: usize, limits: SearchLimits) -> Ball {
    let table = MoveTable::new(center.rank()).expect("positive rank");
    let mut bfs = Bfs::new(center.relators().clone(), limits.dedup);
    let mut truncated = false;
    for _ in 0..radius {
        let (_, t) = bfs.step(&table, &limits, 0, |_, _| false);
        if t {
            truncated = true;
            break;
        }
        if bfs.frontier.is_empty() {
            break;
        }
    }
    Ball {
        center: center.clone(),
        radius,
        level_sizes: bfs.level_sizes,
        truncated,
        nodes_expanded: bfs.nodes_expanded,
        nodes: bfs.nodes,
        index: bfs.index,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub ball_keys: usize,
    pub ball_states: usize,
    pub ball_levels: Vec<usize>,
    pub forward_keys: usize,
    pub forward_states: usize,
    pub forward_levels: Vec<usize>,
    pub nodes_expanded: usize,
    pub peak_frontier: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

/// Moves taking the tuple `from` to exactly `to`, where both have the same
/// key, together with the relator permutation: `to[i]` ends up in slot `perm[i]`.
pub fn normalize_to(from: &[Word], to: &[Word]) -> Option<(Vec<Move>, Vec<usize>)> {
    let n = from.len();
    let mut used = vec![false; n];
    let mut perm = vec![0; n];
    let mut moves = Vec::new();
    for (i, target) in to.iter().enumerate() {
        let want = target.canonical_cyclic();
        let j = (0..n).find(|&j| !used[j] && from[j].canonical_cyclic() == want)?;
        used[j] = true;
        perm[i] = j;
        if let Some(c) = from[j].conjugator_to(target) {
            moves.extend(conjugation_moves(j, &c));
        } else {
            let c = from[j].inverse().conjugator_to(target)?;
            moves.push(Move::InvertRelator(j));
            moves.extend(conjugation_moves(j, &c));
        }
    }
    Some((moves, perm))
}

/// Certificate from `g`: `forward` reaches a tuple whose key is in the ball
/// (centered at the trivial presentation); then normalize and undo the witness.
fn stitch(g: &Presentation, forward: Vec<Move>, reached: &RelatorTuple, ball: &Ball) -> Option<Certificate> {
    let key = canonical_key(reached);
    let (stored, witness) = ball.witness(&key)?;
    let (norm, p) = normalize_to(reached, stored)?;
    let mut moves = forward;
    moves.extend(norm);
    let back = invert_sequence_from(ball.center.relators(), &witness);
    moves.extend(back.iter().map(|m| m.relabel_relators(&p)));
    let terminal = if ball.center == Presentation::trivial(g.rank()) {
        Terminal::TrivialTuple
    } else {
        Terminal::TargetPresentation(ball.center.clone())
    };
    let cert = Certificate::new(g.clone(), moves, terminal);
    verify(&cert).accepted.then_some(cert)
}

/// Forward breadth-first search from `g` against a prepared ball.
pub fn search_with_ball(g: &Presentation, ball: &Ball, forward_depth: usize, limits: SearchLimits) -> SearchResult {
    let mut stats = SearchStats {
        ball_keys: ball.len(),
        ball_states: ball.states(),
        ball_levels: ball.level_sizes.clone(),
        nodes_expanded: ball.nodes_expanded,
        truncated: ball.truncated,
        ..SearchStats::default()
    };
    let table = MoveTable::new(g.rank()).expect("positive rank");
    let mut bfs = Bfs::new(g.relators().clone(), limits.dedup);
    let finish = |bfs: &Bfs, stats: &mut SearchStats, cert: Option<Certificate>| {
        stats.forward_keys = bfs.index.len();
        stats.forward_states = bfs.nodes.len();
        stats.forward_levels = bfs.level_sizes.clone();
        stats.nodes_expanded += bfs.nodes_expanded;
        stats.peak_frontier = bfs.peak_frontier;
        SearchResult {
            certificate: cert,
            stats: stats.clone(),
        }
    };
    if g.rank() != ball.center.rank() {
        return finish(&bfs, &mut stats, None);
    }
    if ball.contains(&g.canonical_key()) {
        let cert = stitch(g, Vec::new(), g.relators(), ball);
        return finish(&bfs, &mut stats, cert);
    }
    let mut hit = None;
    for _ in 0..forward_depth {
        let (stop, trunc) = bfs.step(&table, &limits, ball.states(), |id, key| {
            if ball.contains(key) {
                hit = Some(id);
                true
            } else {
                false
            }
        });
        if let Some(id) = hit {
            let forward = path(&bfs.nodes, id);
            let reached = bfs.nodes[id as usize].tuple.clone();
            let cert = stitch(g, forward, &reached, ball);
            return finish(&bfs, &mut stats, cert);
        }
        if trunc {
            stats.truncated = true;
            break;
        }
        if stop || bfs.frontier.is_empty() {
            break;
        }
    }
    finish(&bfs, &mut stats, None)
}

/// Meet-in-the-middle: a ball of radius `backward_radius` around the trivial
/// presentation and a forward search of depth `forward_depth` from `g`.
/// A returned certificate has been verified.
pub fn bidirectional_search(
    g: &Presentation,
    forward_depth: usize,
    backward_radius: usize,
    limits: SearchLimits,
) -> SearchResult {
    let ball = grow_ball(&Presentation::trivial(g.rank()), backward_radius, limits);
    search_with_ball(g, &ball, forward_depth, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;
    use crate::moves::apply_sequence;
    use crate::tools::scramble;

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn radius_zero() {
        let b = grow_ball(&Presentation::trivial(2), 0, lim());
        assert_eq!(b.len(), 1);
        assert_eq!(b.level_sizes, vec![1]);
        let (_, w) = b.witness(&Presentation::trivial(2).canonical_key()).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn witnesses_replay() {
        let center = Presentation::trivial(2);
        let b = grow_ball(&center, 2, lim());
        for key in b.keys() {
            let (t, w) = b.witness(key).unwrap();
            assert!(w.len() <= 2);
            let u = apply_sequence(center.relators(), &w);
            assert_eq!(&u, t);
            assert_eq!(&canonical_key(&u), key);
        }
        assert_eq!(b.level_sizes.iter().sum::<usize>(), b.states());
    }

    #[test]
    fn monotone_and_deterministic() {
        let c = Presentation::trivial(2);
        let sizes: Vec<usize> = (0..=3).map(|r| grow_ball(&c, r, lim()).len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        let a = grow_ball(&c, 3, lim());
        let b = grow_ball(&c, 3, SearchLimits { threads: 4, ..lim() });
        let mut ka: Vec<_> = a.keys().cloned().collect();
        let mut kb: Vec<_> = b.keys().cloned().collect();
        ka.sort();
        kb.sort();
        assert_eq!(ka, kb);
        for k in &ka {
            assert_eq!(a.witness(k).unwrap().1, b.witness(k).unwrap().1);
        }
    }

    #[test]
    fn budget_truncates() {
        let b = grow_ball(&Presentation::trivial(2), 3, SearchLimits { node_budget: 10, ..lim() });
        assert!(b.truncated);
        assert_eq!(b.states(), 10);
    }

    #[test]
    fn trivial_needs_nothing() {
        let r = bidirectional_search(&Presentation::trivial(2), 0, 0, lim());
        let c = r.certificate.unwrap();
        assert!(c.moves.is_empty());
        assert!(verify(&c).accepted);
    }

    #[test]
    fn normalizing_moves() {
        let from: Vec<Word> = ["bA", "aab"].iter().map(|s| parse_word(s).unwrap()).collect();
        let to: Vec<Word> = ["baa", "aB"].iter().map(|s| parse_word(s).unwrap()).collect();
        let (moves, perm) = normalize_to(&from, &to).unwrap();
        assert_eq!(perm, vec![1, 0]);
        let t = apply_sequence(&from, &moves);
        assert_eq!(t[1], to[0]);
        assert_eq!(t[0], to[1]);
    }

    #[test]
    fn finds_scrambles() {
        for seed in 0..5 {
            let s = scramble(&Presentation::trivial(2), 3, seed);
            let r = bidirectional_search(&s.presentation, 2, 2, lim());
            let c = r.certificate.expect("found");
            assert!(verify(&c).accepted);
        }
    }

    #[test]
    fn radius_one_brute_force() {
        let c = Presentation::trivial(2);
        let table = MoveTable::new(2).unwrap();
        let mut keys: Vec<CanonicalKey> = table.moves().iter().map(|m| canonical_key(&apply_move(c.relators(), m))).collect();
        keys.push(c.canonical_key());
        keys.sort();
        keys.dedup();
        let b = grow_ball(&c, 1, lim());
        assert_eq!(b.len(), keys.len());
        assert!(keys.iter().all(|k| b.contains(k)));
    }

    #[test]
    fn key_dedup_misses_conjugates() {
        // conjugating r0 by b changes what mul 1 0 produces
        let seq: Vec<Move> = ["inv 1", "conj 0 b -1", "conj 1 a +1", "mul 1 0"]
            .iter()
            .map(|l| l.parse().unwrap())
            .collect();
        let c = Presentation::trivial(2);
        let target = canonical_key(&apply_sequence(c.relators(), &seq));
        assert!(grow_ball(&c, 4, lim()).contains(&target));
        let keyed = grow_ball(&c, 4, SearchLimits { dedup: Dedup::Key, ..lim() });
        assert!(!keyed.contains(&target));
    }

    #[test]
    fn exact_ball_contains_every_scramble() {
        let c = Presentation::trivial(2);
        let ball = grow_ball(&c, 4, lim());
        for seed in 0..30 {
            let s = scramble(&c, 4, seed);
            assert!(ball.contains(&s.presentation.canonical_key()), "seed {seed}");
            let r = search_with_ball(&s.presentation, &ball, 0, lim());
            assert!(verify(&r.certificate.unwrap()).accepted);
        }
    }
}
