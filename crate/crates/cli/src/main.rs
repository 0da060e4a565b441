use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use actriv::certify::{resolve_presentation, rewrite_pure_ac, verify, CertificateError};
use actriv::ga::{evolve, run_islands, FitnessKind, GaConfig, SearchOutcome, Status};
use actriv::oracle::{bidirectional_search, Dedup, SearchLimits};
use actriv::tools::{catalog, census, compose, lift_certificate, scramble_with};
use actriv::whitehead::{is_basis_part, is_primitive, minimize_tuple, minimize_tuple_independent};
use actriv::{parse_word, Certificate, Presentation};

#[derive(Parser)]
#[command(name = "actriv", version, about = "Andrews-Curtis trivialization search and certificate checking")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genetic search for a trivializing sequence.
    Search(SearchArgs),
    /// Replay a certificate against a presentation.
    Verify {
        presentation: String,
        certificate: PathBuf,
        /// Only print the verdict.
        #[arg(long)]
        quiet: bool,
    },
    /// Rewrite a certificate with Whitehead moves into pure AC moves.
    Rewrite {
        certificate: PathBuf,
        /// Presentation to use if the certificate has no header.
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive meet-in-the-middle search.
    Bfs {
        presentation: String,
        #[arg(long, default_value_t = 4)]
        forward_depth: usize,
        #[arg(long, default_value_t = 4)]
        backward_radius: usize,
        #[arg(long, default_value_t = 5_000_000)]
        node_budget: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Visited-state test: exact tuples, or canonical keys (smaller, incomplete).
        #[arg(long, default_value = "exact", value_parser = ["exact", "key"])]
        dedup: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply random moves to a presentation.
    Scramble {
        #[arg(default_value = "catalog:trivial(2)")]
        presentation: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Draw from the whole move table, Whitehead moves included.
        #[arg(long)]
        full_table: bool,
        /// Accepted for uniformity; scrambling is sequential.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Where to write the certificate leading back to the input.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Substitute the relators of H for the generators in G.
    Compose {
        g: String,
        h: String,
        /// Lift this pure-AC trivialization of G to a certificate from G(H) to H.
        #[arg(long)]
        lift: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whitehead-minimize words and test primitivity.
    Whitehead {
        #[arg(required = true)]
        words: Vec<String>,
        /// Minimize each word separately.
        #[arg(long)]
        independent: bool,
    },
    /// List the built-in presentations, or print one.
    Catalog { name: Option<String> },
    /// Count the presentations of the two infinite series.
    Census {
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    presentation: String,
    /// TOML file with GA settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    fitness: Option<FitnessKind>,
    #[arg(long)]
    penalty_m: Option<u64>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    crossover_rate: Option<f64>,
    #[arg(long)]
    mutation_rate: Option<f64>,
    /// Four comma-separated weights for append, insert, delete, change.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    mutation_weights: Option<Vec<f64>>,
    #[arg(long)]
    max_generations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    islands: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Fail {
    /// Search exhausted or certificate rejected.
    Negative,
    /// Bad input.
    Usage(String),
}

impl From<CertificateError> for Fail {
    fn from(e: CertificateError) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Res = Result<(), Fail>;

fn presentation(spec: &str) -> Result<Presentation, Fail> {
    let p = Path::new(spec);
    if !spec.starts_with("inline") && !spec.starts_with("catalog:") && !p.exists() {
        if let Some(found) = catalog::lookup(spec) {
            return Ok(found);
        }
        // relators given directly, e.g. "aaBBB abaBAB"
        if spec.trim().contains(char::is_whitespace) {
            return resolve_presentation(&format!("inline {spec}"), None).map_err(Fail::from);
        }
    }
    resolve_presentation(spec, None).map_err(Fail::from)
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res {
    std::fs::write(path, text).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_certificate(path: &Path, supplied: Option<&Presentation>) -> Result<Certificate, Fail> {
    let text = read(path)?;
    Ok(Certificate::parse(&text, path.parent(), supplied)?)
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>() >> 12;
        eprintln!("seed: {s}");
        s
    })
}

fn emit_json(command: &str, ok: bool, report: impl Serialize) {
    let v = json!({ "command": command, "ok": ok, "report": report });
    println!("{}", serde_json::to_string_pretty(&v).expect("serializable report"));
}

fn ga_config(a: &SearchArgs) -> Result<GaConfig, Fail> {
    let mut c = match &a.config {
        Some(path) => toml::from_str(&read(path)?)
            .map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?,
        None => GaConfig::default(),
    };
    if let Some(v) = a.fitness {
        c.fitness = v;
    }
    if let Some(v) = a.penalty_m {
        c.penalty_m = v;
    }
    if let Some(v) = a.population {
        c.population_size = v;
    }
    if let Some(v) = a.crossover_rate {
        c.crossover_rate = v;
    }
    if let Some(v) = a.mutation_rate {
        c.mutation_rate = v;
    }
    if let Some(w) = &a.mutation_weights {
        c.mutation_weights = [w[0], w[1], w[2], w[3]];
    }
    if let Some(v) = a.max_generations {
        c.max_generations = v;
    }
    if let Some(v) = a.threads {
        c.threads = v;
    }
    let config_seed = a.config.is_some().then_some(c.seed);
    c.seed = seed_or_fresh(a.seed.or(config_seed));
    c.validate().map_err(|e| Fail::Usage(e.to_string()))?;
    Ok(c)
}

fn search(a: &SearchArgs, json_out: bool) -> Res {
    let p = presentation(&a.presentation)?;
    let config = ga_config(a)?;
    let (outcome, winner): (SearchOutcome, Option<usize>) = if a.islands > 1 {
        let r = run_islands(&p, &config, a.islands).map_err(|e| Fail::Usage(e.to_string()))?;
        (r.reported().clone(), r.winner)
    } else {
        (evolve(&p, config.clone()).map_err(|e| Fail::Usage(e.to_string()))?, None)
    };
    let solved = outcome.status == Status::Solved;
    if let (Some(path), Some(cert)) = (&a.out, &outcome.certificate) {
        write(path, &cert.to_text())?;
    }
    if json_out {
        // thread count does not affect the result and is left out of the report
        let mut shown = serde_json::to_value(&config).expect("serializable config");
        if let Some(m) = shown.as_object_mut() {
            m.remove("threads");
        }
        emit_json(
            "search",
            solved,
            json!({
                "config": shown,
                "islands": a.islands,
                "winner": winner,
                "outcome": outcome,
                "certificate_text": outcome.certificate.as_ref().map(Certificate::to_text),
            }),
        );
    } else {
        println!("presentation: {}", p.inline());
        println!("seed: {}  fitness: {:?}", outcome.seed, config.fitness);
        if let Some(w) = winner {
            println!("island {w} of {}", a.islands);
        }
        let best: Vec<String> = outcome.best_tuple.iter().map(|w| w.to_string()).collect();
        match &outcome.certificate {
            Some(cert) => {
                println!(
                    "solved after {} generations with {} moves; final tuple {}",
                    outcome.generations_used,
                    cert.moves.len(),
                    best.join(" ")
                );
                if a.out.is_none() {
                    print!("{}", cert.to_text());
                }
            }
            None => println!(
                "exhausted after {} generations; best fitness {} at {}",
                outcome.generations_used,
                outcome.best_fitness,
                best.join(" ")
            ),
        }
    }
    if solved {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn verify_cmd(pres: &str, cert_path: &Path, quiet: bool, json_out: bool) -> Res {
    let p = presentation(pres)?;
    let cert = load_certificate(cert_path, Some(&p))?;
    let report = verify(&cert);
    if json_out {
        emit_json("verify", report.accepted, &report);
    } else {
        if !quiet {
            let init: Vec<String> = report.initial.iter().map(|w| w.spaced()).collect();
            println!("0: start => {}", init.join(", "));
            for s in &report.steps {
                println!("{s}");
            }
        }
        match &report.failure {
            None => println!("accepted: {} moves", report.move_count),
            Some(f) => println!("rejected: {f}"),
        }
    }
    if report.accepted {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn rewrite_cmd(cert_path: &Path, pres: Option<&str>, out: Option<&Path>, json_out: bool) -> Res {
    let supplied = pres.map(presentation).transpose()?;
    let cert = load_certificate(cert_path, supplied.as_ref())?;
    let pure = match rewrite_pure_ac(&cert) {
        Ok(c) => c,
        Err(CertificateError::NotVerified(m)) => {
            eprintln!("input certificate does not verify: {m}");
            return Err(Fail::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let text = pure.to_text();
    if let Some(path) = out {
        write(path, &text)?;
    }
    if json_out {
        emit_json(
            "rewrite",
            true,
            json!({
                "input_moves": cert.moves.len(),
                "input_whitehead_moves": cert.whitehead_count(),
                "output_moves": pure.moves.len(),
                "certificate": pure,
                "certificate_text": text,
            }),
        );
    } else {
        eprintln!(
            "{} moves ({} Whitehead) rewritten to {} AC moves",
            cert.moves.len(),
            cert.whitehead_count(),
            pure.moves.len()
        );
        if out.is_none() {
            print!("{text}");
        }
    }
    Ok(())
}

struct BfsArgs<'a> {
    forward: usize,
    backward: usize,
    budget: usize,
    threads: usize,
    dedup: &'a str,
}

fn bfs_cmd(pres: &str, a: BfsArgs, out: Option<&Path>, json_out: bool) -> Res {
    let p = presentation(pres)?;
    let (fwd, back, budget) = (a.forward, a.backward, a.budget);
    let limits = SearchLimits {
        node_budget: budget,
        threads: a.threads.max(1),
        dedup: if a.dedup == "key" { Dedup::Key } else { Dedup::Exact },
    };
    let r = bidirectional_search(&p, fwd, back, limits);
    if let (Some(path), Some(c)) = (out, &r.certificate) {
        write(path, &c.to_text())?;
    }
    let found = r.certificate.is_some();
    if json_out {
        emit_json(
            "bfs",
            found,
            json!({
                "stats": r.stats,
                "certificate": r.certificate,
                "certificate_text": r.certificate.as_ref().map(Certificate::to_text),
            }),
        );
    } else {
        let s = &r.stats;
        println!("ball: {} keys in {} states, levels {:?}", s.ball_keys, s.ball_states, s.ball_levels);
        println!("forward: {} keys in {} states, levels {:?}", s.forward_keys, s.forward_states, s.forward_levels);
        println!("nodes expanded {}, peak frontier {}", s.nodes_expanded, s.peak_frontier);
        if s.truncated {
            println!("node budget {budget} reached; search truncated");
        }
        match &r.certificate {
            Some(c) => {
                println!("found certificate with {} moves", c.moves.len());
                if out.is_none() {
                    print!("{}", c.to_text());
                }
            }
            None => println!("no certificate within depths ({fwd}, {back})"),
        }
    }
    if found {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn scramble_cmd(pres: &str, length: usize, seed: Option<u64>, full: bool, out: Option<&Path>, json_out: bool) -> Res {
    let p = presentation(pres)?;
    let seed = seed_or_fresh(seed);
    let s = scramble_with(&p, length, seed, full);
    if !verify(&s.certificate).accepted {
        return Err(Fail::Usage("internal error: scramble certificate does not verify".into()));
    }
    if let Some(path) = out {
        write(path, &s.certificate.to_text())?;
    }
    if json_out {
        emit_json(
            "scramble",
            true,
            json!({
                "seed": seed,
                "length": length,
                "presentation": s.presentation,
                "total_length": s.presentation.total_length(),
                "applied": s.applied,
                "certificate_text": s.certificate.to_text(),
            }),
        );
    } else {
        println!("# scramble of {} with {length} moves, seed {seed}", p.inline());
        print!("{}", s.presentation);
    }
    Ok(())
}

fn compose_cmd(g: &str, h: &str, lift: Option<&Path>, out: Option<&Path>, json_out: bool) -> Res {
    let g = presentation(g)?;
    let h = presentation(h)?;
    let gh = compose(&g, &h).map_err(|e| Fail::Usage(e.to_string()))?;
    let lifted = match lift {
        Some(path) => {
            let cert = load_certificate(path, Some(&g))?;
            Some(lift_certificate(&cert, &h).map_err(|e| Fail::Usage(e.to_string()))?)
        }
        None => None,
    };
    if let (Some(path), Some(c)) = (out, &lifted) {
        write(path, &c.to_text())?;
    }
    if json_out {
        emit_json(
            "compose",
            true,
            json!({
                "presentation": gh,
                "lifted_certificate_text": lifted.as_ref().map(Certificate::to_text),
            }),
        );
    } else {
        print!("{gh}");
        if let Some(c) = &lifted {
            if out.is_none() {
                print!("{}", c.to_text());
            } else {
                eprintln!("lifted certificate with {} moves", c.moves.len());
            }
        }
    }
    Ok(())
}

fn whitehead_cmd(words: &[String], independent: bool, json_out: bool) -> Res {
    let ws = words
        .iter()
        .map(|s| parse_word(s).map_err(|e| Fail::Usage(format!("{s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if ws.iter().map(|w| w.rank_used()).max().unwrap_or(0) > actriv::whitehead::MAX_RANK {
        return Err(Fail::Usage(format!("words may use at most {} generators", actriv::whitehead::MAX_RANK)));
    }
    let m = if independent {
        minimize_tuple_independent(&ws)
    } else {
        minimize_tuple(&ws)
    };
    let primitive = if ws.len() == 1 {
        is_primitive(&ws[0])
    } else {
        is_basis_part(&ws, !independent)
    };
    if json_out {
        emit_json(
            "whitehead",
            true,
            json!({
                "input": ws,
                "minimized": m.words,
                "total": m.total,
                "automorphisms_applied": m.applied.len(),
                "primitive": primitive,
            }),
        );
    } else {
        let min: Vec<String> = m.words.iter().map(|w| w.to_string()).collect();
        println!("minimized: {} (total length {}, {} automorphisms)", min.join(" "), m.total, m.applied.len());
        let what = if ws.len() == 1 { "primitive" } else { "part of a basis" };
        println!("{what}: {}", if primitive { "yes" } else { "no" });
    }
    Ok(())
}

fn catalog_cmd(name: Option<&str>, json_out: bool) -> Res {
    match name {
        Some(n) => {
            let p = catalog::lookup(n).ok_or_else(|| Fail::Usage(format!("unknown catalog entry {n:?}")))?;
            if json_out {
                emit_json("catalog", true, json!({ "name": n, "presentation": p }));
            } else {
                print!("{p}");
            }
        }
        None => {
            let all = catalog::catalog();
            if json_out {
                let list: Vec<_> = all.iter().map(|(n, p)| json!({ "name": n, "presentation": p })).collect();
                emit_json("catalog", true, list);
            } else {
                for (n, p) in &all {
                    println!("{n:12} {}", p.inline());
                }
                println!("also: AK(n), trivial(n), test1..test4, MS(n,w) with w in x,y");
            }
        }
    }
    Ok(())
}

fn census_cmd(bound: usize, json_out: bool) -> Res {
    let c = census::census(bound);
    if json_out {
        emit_json("census", true, &c);
    } else {
        println!("total relator length <= {bound}");
        println!("series AK(n): n in {:?}", c.series3);
        println!("series MS(n, w):");
        println!("  {:>3} {:>8} {:>8} {:>8}", "n", "words", "cyclic", "keys");
        for r in &c.series4 {
            println!("  {:>3} {:>8} {:>8} {:>8}", r.n, r.words, r.cyclic, r.keys);
        }
        println!("  all {:>8} {:>8} {:>8}", c.series4_words, c.series4_cyclic, c.series4_keys);
        println!("distinct keys over both series: {}", c.combined_keys);
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    let j = cli.json;
    match cli.command {
        Command::Search(a) => search(&a, j),
        Command::Verify {
            presentation,
            certificate,
            quiet,
        } => verify_cmd(&presentation, &certificate, quiet, j),
        Command::Rewrite {
            certificate,
            presentation,
            out,
        } => rewrite_cmd(&certificate, presentation.as_deref(), out.as_deref(), j),
        Command::Bfs {
            presentation,
            forward_depth,
            backward_radius,
            node_budget,
            threads,
            dedup,
            out,
        } => {
            let a = BfsArgs {
                forward: forward_depth,
                backward: backward_radius,
                budget: node_budget,
                threads,
                dedup: &dedup,
            };
            bfs_cmd(&presentation, a, out.as_deref(), j)
        }
        Command::Scramble {
            presentation,
            length,
            seed,
            full_table,
            threads: _,
            out,
        } => scramble_cmd(&presentation, length, seed, full_table, out.as_deref(), j),
        Command::Compose { g, h, lift, out } => compose_cmd(&g, &h, lift.as_deref(), out.as_deref(), j),
        Command::Whitehead { words, independent } => whitehead_cmd(&words, independent, j),
        Command::Catalog { name } => catalog_cmd(name.as_deref(), j),
        Command::Census { bound } => census_cmd(bound, j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Negative) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
