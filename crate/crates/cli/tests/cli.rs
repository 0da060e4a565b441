use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actriv")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn search_ak2_then_verify() {
    let cert = scratch("ak2.cert");
    let c = cert.to_str().unwrap();
    let o = run(&["search", "catalog:AK2", "--fitness", "fit2", "--seed", "7", "--out", c]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = run(&["verify", "catalog:AK2", c, "--quiet"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("accepted"));
}

#[test]
fn verify_prints_chain() {
    let o = run(&["verify", &data("g1.pres"), &data("g1.cert")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("6: mul 0 1 => r0 -> A b b A b b A b"), "{out}");
    assert!(out.ends_with("accepted: 21 moves\n"));
}

#[test]
fn truncated_certificate_fails() {
    let text = std::fs::read_to_string(data("g1.cert")).unwrap();
    let short: Vec<&str> = text.lines().take(10).collect();
    let path = scratch("truncated.cert");
    std::fs::write(&path, short.join("\n")).unwrap();
    let o = run(&["verify", &data("g1.pres"), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rejected: terminal not reached"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["search"]).status.code(), Some(2));
    assert_eq!(run(&["search", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(run(&["whitehead", "ab!"]).status.code(), Some(2));
    assert_eq!(run(&["search", "G1", "--population", "0"]).status.code(), Some(2));
    let bad = scratch("bad.cert");
    std::fs::write(&bad, "terminal trivial\nfrobnicate 0\n").unwrap();
    assert_eq!(run(&["verify", "G1", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn search_exhaustion_exits_one() {
    let o = run(&["search", "G3", "--seed", "1", "--max-generations", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exhausted after 5 generations"));
}

#[test]
fn json_envelope() {
    let o = run(&["verify", "G1", &data("g1.cert"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["ok"], true);
    assert_eq!(v["report"]["move_count"], 21);
    assert_eq!(v["report"]["steps"][0]["mv"], "inv 0");
}

#[test]
fn scramble_round_trip() {
    let cert = scratch("scr.cert");
    let o = run(&["scramble", "G1", "--length", "8", "--seed", "4", "--out", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let relators: Vec<&str> = text.lines().skip(2).collect();
    let inline = format!("inline {}", relators.join(" "));
    let v = run(&["verify", &inline, cert.to_str().unwrap(), "--quiet"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn rewrite_and_bfs() {
    let pure = scratch("g2_pure.cert");
    let o = run(&["rewrite", &data("g2.cert"), "--out", pure.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = run(&["verify", "G2", pure.to_str().unwrap(), "--quiet"]);
    assert_eq!(v.status.code(), Some(0));
    let b = run(&["bfs", "inline Bab aBABab", "--forward-depth", "2", "--backward-radius", "4"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("found certificate"));
}

#[test]
fn compose_lift_whitehead_catalog_census() {
    let lifted = scratch("lift.cert");
    let o = run(&["compose", "neumann", "G1", "--lift", &data("neumann.cert"), "--out", lifted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let composed = stdout(&o);
    let inline = format!("inline {}", composed.lines().skip(1).collect::<Vec<_>>().join(" "));
    assert_eq!(run(&["verify", &inline, lifted.to_str().unwrap(), "--quiet"]).status.code(), Some(0));

    let w = stdout(&run(&["whitehead", "a^2b"]));
    assert!(w.contains("primitive: yes"));
    let w = stdout(&run(&["whitehead", "abAB"]));
    assert!(w.contains("primitive: no"));

    assert_eq!(stdout(&run(&["catalog", "G2"])), "rank 2\nbaBAA\nAbbaBBB\n");
    let c: serde_json::Value = serde_json::from_slice(&run(&["census", "--bound", "7", "--json"]).stdout).unwrap();
    assert_eq!(c["report"]["series4"][0]["cyclic"], 3);
}
