//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use actriv::certify::{resolve_presentation, rewrite_pure_ac, Terminal};
use actriv::ga::{evolve, GaConfig, Status};
use actriv::moves::invert_sequence_from;
use actriv::oracle::{grow_ball, search_with_ball, SearchLimits};
use actriv::presentation::canonical_key;
use actriv::tools::{catalog, compose, lift_certificate, scramble};
use actriv::whitehead::is_primitive;
use actriv::{parse_word, verify, Certificate, Move, MoveTable, Presentation, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn load(name: &str) -> Certificate {
    let path = data(name);
    let text = std::fs::read_to_string(&path).expect("certificate file");
    Certificate::parse(&text, path.parent(), None).expect("certificate parses")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {:.1} s, limit {:.0} s", t.as_secs_f64(), limit.as_secs_f64()))
}

fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

fn c1_g1() -> Outcome {
    let t = Instant::now();
    let c = load("g1.cert");
    let r = verify(&c);
    ensure(r.accepted, format!("rejected: {:?}", r.failure))?;
    ensure(r.steps.len() == 21, format!("{} steps", r.steps.len()))?;
    // the checkpoints carry the printed words; replay compares them exactly
    ensure(c.checkpoints.len() >= 19, format!("{} checkpoints", c.checkpoints.len()))?;
    let step6 = w("AbbAbbAb");
    ensure(
        r.steps.iter().any(|s| s.tuple.contains(&step6)),
        "a^-1 b^2 a^-1 b^2 a^-1 b never appears",
    )?;
    ensure(r.final_key.is_trivial(2), "final key is not (a, b)")?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("21 moves, {} checkpoints matched", c.checkpoints.len()))
}

fn c2_g2() -> Outcome {
    let t = Instant::now();
    let c = load("g2.cert");
    let r = verify(&c);
    ensure(r.accepted, format!("rejected: {:?}", r.failure))?;
    ensure(c.whitehead_count() > 0, "no Whitehead moves")?;
    let pure = rewrite_pure_ac(&c).map_err(|e| e.to_string())?;
    ensure(pure.is_pure_ac(), "rewrite left Whitehead moves")?;
    ensure(verify(&pure).accepted, "rewritten certificate rejected")?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("{} moves, rewritten to {} AC moves", c.moves.len(), pure.moves.len()))
}

fn c3_g3() -> Outcome {
    let t = Instant::now();
    let c = load("g3.cert");
    let r = verify(&c);
    ensure(r.accepted, format!("rejected: {:?}", r.failure))?;
    let g1 = catalog::lookup("G1").unwrap();
    ensure(matches!(&c.terminal, Terminal::TargetPresentation(p) if *p == g1), "terminal is not G1")?;
    ensure(r.final_key == g1.canonical_key(), "final key differs from G1")?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("{} moves, key of G1 reached", c.moves.len()))
}

fn c4_neumann() -> Outcome {
    let t = Instant::now();
    let c = load("neumann.cert");
    let r = verify(&c);
    ensure(r.accepted, format!("rejected: {:?}", r.failure))?;
    ensure(c.moves.len() == 13, format!("{} moves", c.moves.len()))?;
    let lifted = lift_certificate(&c, &Presentation::trivial(2)).map_err(|e| e.to_string())?;
    ensure(verify(&lifted).accepted, "lift to trivial rejected")?;
    within(t, Duration::from_secs(1))?;
    Ok("13 moves; lift over trivial verifies".into())
}

fn c5_table() -> Outcome {
    for n in 1..=6 {
        let len = MoveTable::new(n).unwrap().len();
        ensure(len == 8 * n * n - 2 * n, format!("rank {n}: {len} moves"))?;
    }
    ensure(MoveTable::new(2).unwrap().len() == 28, "rank 2 is not 28")?;
    Ok("8n^2-2n for n = 1..6".into())
}

fn c6_lemma_one() -> Outcome {
    let t = Instant::now();
    let table = MoveTable::new(2).unwrap();
    let wh: Vec<Move> = table.moves().iter().copied().filter(Move::is_whitehead).collect();
    let mut rng = StdRng::seed_from_u64(6);
    let mut mixed = 0;
    for k in 0..200u64 {
        let s = scramble(&Presentation::trivial(2), rng.gen_range(0..=6), k);
        let mut moves = s.certificate.moves.clone();
        let at = rng.gen_range(0..=moves.len());
        let before = actriv::moves::apply_sequence(s.presentation.relators(), &moves[..at]);
        let block: Vec<Move> = (0..rng.gen_range(1..=4)).map(|_| wh[rng.gen_range(0..wh.len())]).collect();
        let after = actriv::moves::apply_sequence(&before, &block);
        let undo = invert_sequence_from(&before, &block);
        debug_assert_eq!(actriv::moves::apply_sequence(&after, &undo), before);
        let tail = moves.split_off(at);
        moves.extend(block);
        moves.extend(undo);
        moves.extend(tail);
        let c = Certificate::new(s.presentation.clone(), moves, Terminal::TrivialTuple);
        ensure(verify(&c).accepted, format!("mixed certificate {k} rejected"))?;
        mixed += c.whitehead_count();
        let pure = rewrite_pure_ac(&c).map_err(|e| format!("{k}: {e}"))?;
        ensure(pure.whitehead_count() == 0, format!("{k}: Whitehead moves remain"))?;
        ensure(verify(&pure).accepted, format!("{k}: rewrite rejected"))?;
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("200 certificates, {mixed} Whitehead moves removed"))
}

/// Cyclic words that occur as the image of `a` under a product of at most
/// `depth` elementary Nielsen moves.
fn nielsen_primitives(depth: usize) -> HashSet<Word> {
    let (a, b) = (w("a"), w("b"));
    let step = |(x, y): &(Word, Word)| -> Vec<(Word, Word)> {
        vec![
            (x.inverse(), y.clone()),
            (x.clone(), y.inverse()),
            (y.clone(), x.clone()),
            (x.multiply(y), y.clone()),
            (x.multiply(&y.inverse()), y.clone()),
            (y.multiply(x), y.clone()),
            (y.inverse().multiply(x), y.clone()),
            (x.clone(), y.multiply(x)),
            (x.clone(), y.multiply(&x.inverse())),
            (x.clone(), x.multiply(y)),
            (x.clone(), x.inverse().multiply(y)),
        ]
    };
    let mut seen: HashSet<(Word, Word)> = HashSet::new();
    let mut frontier = vec![(a, b)];
    seen.insert(frontier[0].clone());
    for _ in 0..depth {
        let mut next = Vec::new();
        for pair in &frontier {
            for q in step(pair) {
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().flat_map(|(x, y)| [x.canonical_cyclic(), y.canonical_cyclic()]).collect()
}

fn c7_whitehead_oracle() -> Outcome {
    let t = Instant::now();
    let prims = nielsen_primitives(6);
    let mut words = vec![w("aab"), w("abAB"), w("ababAB"), w("aabb")];
    let mut rng = StdRng::seed_from_u64(7);
    while words.len() < 50 {
        let len = rng.gen_range(1..=6);
        let raw: Vec<char> = (0..len).map(|_| ['a', 'A', 'b', 'B'][rng.gen_range(0..4)]).collect();
        let u = w(&raw.iter().collect::<String>());
        if !u.is_empty() && !words.contains(&u) {
            words.push(u);
        }
    }
    let mut positive = 0;
    for u in &words {
        let oracle = prims.contains(&u.cyclic_reduce().0.canonical_cyclic());
        ensure(is_primitive(u) == oracle, format!("{u}: whitehead {} oracle {oracle}", is_primitive(u)))?;
        positive += oracle as usize;
    }
    ensure(is_primitive(&w("aab")) && !is_primitive(&w("abAB")), "anchor words misclassified")?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("50 words agree, {positive} primitive"))
}

fn median(v: &mut [u64]) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn c8_table_one() -> Outcome {
    let t = Instant::now();
    let trivial = Presentation::trivial(2);
    let (mut lengths, mut solved, mut gens) = (0usize, 0usize, Vec::new());
    for seed in 1..=20u64 {
        let s = scramble(&trivial, 10, seed);
        lengths += s.presentation.total_length();
        let config = GaConfig {
            seed,
            max_generations: 2000,
            ..GaConfig::default()
        };
        let o = evolve(&s.presentation, config).map_err(|e| e.to_string())?;
        if o.status == Status::Solved {
            let c = o.certificate.as_ref().ok_or("solved without certificate")?;
            ensure(verify(c).accepted, format!("seed {seed}: certificate rejected"))?;
            solved += 1;
        }
        gens.push(o.generations_used);
    }
    let mean = lengths as f64 / 20.0;
    let med = median(&mut gens);
    ensure((9.0..=17.0).contains(&mean), format!("mean total length {mean}"))?;
    ensure(solved >= 18, format!("solved {solved}/20"))?;
    ensure(med <= 200.0, format!("median generations {med}"))?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("mean length {mean:.1}, solved {solved}/20, median generations {med}"))
}

fn c9_ak2() -> Outcome {
    let t = Instant::now();
    let g1 = catalog::lookup("AK(2)").unwrap();
    for seed in 1..=20u64 {
        let config = GaConfig {
            seed,
            max_generations: 50_000,
            ..GaConfig::default()
        };
        let o = evolve(&g1, config).map_err(|e| e.to_string())?;
        if let Some(c) = &o.certificate {
            ensure(verify(c).accepted, format!("seed {seed}: certificate rejected"))?;
            within(t, Duration::from_secs(1800))?;
            return Ok(format!("seed {seed}: {} generations, {} moves", o.generations_used, c.moves.len()));
        }
    }
    Err("no seed in 1..=20 solved AK(2)".into())
}

fn c10_oracle_agreement() -> Outcome {
    let t = Instant::now();
    let trivial = Presentation::trivial(2);
    let limits = SearchLimits::default();
    let ball = grow_ball(&trivial, 4, limits);
    ensure(!ball.truncated, "ball truncated")?;
    for k in 0..20u64 {
        let s = scramble(&trivial, 1 + (k as usize % 4), 100 + k);
        let r = search_with_ball(&s.presentation, &ball, 4, limits);
        let c = r.certificate.ok_or(format!("instance {k}: oracle found nothing"))?;
        ensure(verify(&c).accepted, format!("instance {k}: oracle certificate rejected"))?;
        let config = GaConfig {
            seed: k,
            ..GaConfig::default()
        };
        let o = evolve(&s.presentation, config).map_err(|e| e.to_string())?;
        let g = o.certificate.ok_or(format!("instance {k}: GA exhausted"))?;
        ensure(verify(&g).accepted, format!("instance {k}: GA certificate rejected"))?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("20 instances, ball of {} keys", ball.len()))
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_actriv"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn c11_determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["search", "inline aBAbbA aabAB", "--seed", "3", "--max-generations", "3000", "--islands", "3"],
        &["search", "catalog:G3", "--seed", "1", "--max-generations", "400", "--population", "80"],
        &["scramble", "catalog:G1", "--length", "12", "--seed", "9"],
        &["bfs", "inline abaBAB aBBAb", "--forward-depth", "3", "--backward-radius", "3"],
    ];
    for args in runs {
        let mut outs = Vec::new();
        for threads in ["1", "4"] {
            let mut a = args.to_vec();
            a.extend(["--threads", threads, "--json"]);
            outs.push(run_cli(&a)?);
        }
        ensure(outs[0] == outs[1], format!("{} differs between 1 and 4 threads", args[0]))?;
        ensure(outs[0].0 != 2, format!("{} failed with a usage error", args[0]))?;
    }
    Ok("search, scramble and bfs identical at 1 and 4 threads".into())
}

fn c12_proposition_one() -> Outcome {
    let t = Instant::now();
    let entries = catalog::catalog();
    for (name, g) in &entries {
        let h = Presentation::trivial(g.rank());
        ensure(compose(g, &h).map_err(|e| e.to_string())? == *g, format!("compose({name}, trivial) != {name}"))?;
    }
    let c = load("neumann.cert");
    let g1 = resolve_presentation("catalog:G1", None).map_err(|e| e.to_string())?;
    let lifted = lift_certificate(&c, &g1).map_err(|e| e.to_string())?;
    ensure(lifted.presentation == compose(&c.presentation, &g1).unwrap(), "lift starts elsewhere")?;
    ensure(verify(&lifted).accepted, "lifted certificate rejected")?;
    ensure(
        canonical_key(verify(&lifted).final_tuple.as_slice()) == g1.canonical_key(),
        "lift does not end at G1",
    )?;
    within(t, Duration::from_secs(5))?;
    Ok(format!("{} catalog entries; Neumann lift over G1 has {} moves", entries.len(), lifted.moves.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden chain G1", c1_g1),
        ("golden chain G2 and rewrite", c2_g2),
        ("golden chain G3 to G1", c3_g3),
        ("golden chain Neumann and lift", c4_neumann),
        ("move table size", c5_table),
        ("pure-AC rewrite of mixed certificates", c6_lemma_one),
        ("Whitehead primitivity against Nielsen enumeration", c7_whitehead_oracle),
        ("length-10 scramble statistics and GA", c8_table_one),
        ("GA solves AK(2)", c9_ak2),
        ("oracle and GA agree on short scrambles", c10_oracle_agreement),
        ("thread-count determinism", c11_determinism),
        ("composition and lifting", c12_proposition_one),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2} s)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
