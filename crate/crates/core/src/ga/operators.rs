//! Selection, crossover and mutation on chromosomes of move-table indices.

use rand::Rng;

use super::fitness::Fitness;

pub type Chromosome = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    Append,
    Insert,
    Delete,
    Change,
}

/// Roulette weights `(worst + 1 - f)^2`. Fitnesses must share a denominator,
/// in which the `+ 1` is expressed.
pub fn roulette_weights(fitness: &[Fitness]) -> Vec<u128> {
    let worst = fitness.iter().map(|f| f.num).max().unwrap_or(0);
    fitness
        .iter()
        .map(|f| {
            let s = u128::from(worst - f.num) + u128::from(f.den);
            s * s
        })
        .collect()
}

/// Uniform draw from `lo..hi`, sampled as `u64` so that a seed gives the same
/// value on 32- and 64-bit targets.
pub fn uniform<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo as u64..hi as u64) as usize
}

/// Index drawn with probability proportional to `weights`.
pub fn sample_weighted<R: Rng>(weights: &[u128], rng: &mut R) -> usize {
    let total: u128 = weights.iter().sum();
    if total == 0 {
        return uniform(rng, 0, weights.len());
    }
    let mut r = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if r < w {
            return i;
        }
        r -= w;
    }
    weights.len() - 1
}

/// One-point crossover at 1-based cut positions `p` in `1..|a|` and `q` in `1..|b|`.
pub fn crossover_at(a: &[u32], b: &[u32], p: usize, q: usize) -> (Chromosome, Chromosome) {
    let mut o1 = a[..p - 1].to_vec();
    o1.extend_from_slice(&b[q - 1..]);
    let mut o2 = b[..q - 1].to_vec();
    o2.extend_from_slice(&a[p - 1..]);
    (o1, o2)
}

/// One-point crossover with random cuts; parents shorter than 2 pass through.
pub fn crossover<R: Rng>(a: &[u32], b: &[u32], rng: &mut R) -> (Chromosome, Chromosome) {
    if a.len() < 2 || b.len() < 2 {
        return (a.to_vec(), b.to_vec());
    }
    let p = uniform(rng, 1, a.len());
    let q = uniform(rng, 1, b.len());
    crossover_at(a, b, p, q)
}

fn draw_mutation<R: Rng>(weights: &[f64; 4], allow_shrink: bool, rng: &mut R) -> Option<Mutation> {
    let ops = [Mutation::Append, Mutation::Insert, Mutation::Delete, Mutation::Change];
    let usable: Vec<usize> = (0..4).filter(|&k| allow_shrink || k < 2).collect();
    let total: f64 = usable.iter().map(|&k| weights[k]).sum();
    if total <= 0.0 {
        return None;
    }
    let mut r = rng.gen::<f64>() * total;
    for &k in &usable {
        if r < weights[k] {
            return Some(ops[k]);
        }
        r -= weights[k];
    }
    usable.iter().rev().find(|&&k| weights[k] > 0.0).map(|&k| ops[k])
}

/// Applies exactly one of M1-M4. Delete and change are not drawn for an
/// empty chromosome.
pub fn mutate<R: Rng>(c: &mut Chromosome, genes: u32, weights: &[f64; 4], rng: &mut R) -> Option<Mutation> {
    let op = draw_mutation(weights, !c.is_empty(), rng)?;
    match op {
        Mutation::Append => c.push(rng.gen_range(0..genes)),
        Mutation::Insert => {
            let at = uniform(rng, 0, c.len() + 1);
            c.insert(at, rng.gen_range(0..genes));
        }
        Mutation::Delete => {
            let at = uniform(rng, 0, c.len());
            c.remove(at);
        }
        Mutation::Change => {
            let at = uniform(rng, 0, c.len());
            c[at] = rng.gen_range(0..genes);
        }
    }
    Some(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn crossover_formula() {
        let (o1, o2) = crossover_at(&[1, 2, 3], &[10, 20], 2, 1);
        assert_eq!(o1, vec![1, 10, 20]);
        assert_eq!(o2, vec![2, 3]);
    }

    #[test]
    fn crossover_keeps_genes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = vec![1, 2, 3, 4, 5];
        for _ in 0..50 {
            let (o1, o2) = crossover(&a, &a, &mut rng);
            let mut all: Vec<u32> = o1.into_iter().chain(o2).collect();
            all.sort();
            let mut want = [a.clone(), a.clone()].concat();
            want.sort();
            assert_eq!(all, want);
        }
        assert_eq!(crossover(&[7], &[1, 2], &mut rng), (vec![7], vec![1, 2]));
    }

    #[test]
    fn two_member_weights() {
        let w = roulette_weights(&[Fitness::integer(2), Fitness::integer(11)]);
        assert_eq!(w, vec![100, 1]);
        let w = roulette_weights(&[Fitness::integer(4); 3]);
        assert_eq!(w, vec![1, 1, 1]);
    }

    #[test]
    fn mutation_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut c = vec![5];
        assert_eq!(mutate(&mut c, 28, &[1.0, 0.0, 0.0, 0.0], &mut rng), Some(Mutation::Append));
        assert_eq!(c.len(), 2);
        for _ in 0..20 {
            let mut c = vec![];
            assert_eq!(mutate(&mut c, 28, &[0.0, 0.5, 0.5, 0.0], &mut rng), Some(Mutation::Insert));
        }
        let mut c = vec![1, 2, 3];
        mutate(&mut c, 28, &[0.0, 0.0, 1.0, 0.0], &mut rng);
        assert_eq!(c.len(), 2);
        let mut c = vec![];
        assert_eq!(mutate(&mut c, 28, &[0.0, 0.0, 0.5, 0.5], &mut rng), None);
    }
}
