//! Named presentations of the trivial group.

use crate::freegroup::{parse_word, Word};
use crate::presentation::Presentation;
use crate::tools::compose::compose;

fn p(words: &[&str]) -> Presentation {
    let relators = words.iter().map(|s| parse_word(s).expect("catalog word")).collect();
    Presentation::from_relators(relators).expect("catalog presentation")
}

/// `<a,b ; a^n = b^{n+1}, aba = bab>` with `r0 = a^n b^-(n+1)`, `r1 = abaBAB`.
pub fn ak(n: usize) -> Presentation {
    let r0 = Word::power(0, n as i32).multiply(&Word::power(1, -(n as i32 + 1)));
    Presentation::from_relators(vec![r0, parse_word("abaBAB").unwrap()]).unwrap()
}

/// `<x,y ; x⁻¹ yⁿ x = y^{n+1}, x = w>`; `w` should have zero exponent sum in `x`.
pub fn miller_schupp(n: usize, w: &Word) -> Presentation {
    let n = n as i32;
    let r0 = Word::power(0, -1)
        .multiply(&Word::power(1, n))
        .multiply(&Word::generator(0))
        .multiply(&Word::power(1, -(n + 1)));
    let r1 = Word::generator(0).multiply(&w.inverse());
    Presentation::from_relators(vec![r0, r1]).unwrap()
}

/// `<a,b ; a^b = a², b^a = b²>`; composing with `<a,b ; r, s>` gives
/// `<a,b ; r^s = r², s^r = s²>`.
pub fn neumann() -> Presentation {
    p(&["BabAA", "AbaBB"])
}

/// The `H = <a,b ; r, s>` used for the four composed test presentations.
pub fn test_base(k: usize) -> Option<Presentation> {
    Some(match k {
        1 => p(&["aabbb", "aaabbbb"]),
        2 => p(&["aaabbbb", "aaaabbbbb"]),
        // [a,b] = a⁻¹b⁻¹ab
        3 => p(&["aABab", "bBAba"]),
        4 => p(&["AABab", "abABab"]),
        _ => return None,
    })
}

pub fn test_presentation(k: usize) -> Option<Presentation> {
    compose(&neumann(), &test_base(k)?).ok()
}

/// Every fixed entry of the catalog with its name.
pub fn catalog() -> Vec<(String, Presentation)> {
    let mut out = vec![
        ("trivial(2)".to_string(), Presentation::trivial(2)),
        ("trivial(3)".to_string(), Presentation::trivial(3)),
        ("G1".to_string(), ak(2)),
        ("AK(3)".to_string(), ak(3)),
        ("G2".to_string(), p(&["baBAA", "AbbaBBB"])),
        ("G3".to_string(), p(&["AbbaBBB", "aaBAB"])),
        ("P1".to_string(), p(&["BabAA", "CbcBB", "AcaCC"])),
        ("P2".to_string(), p(&["AbbaBBB", "BaabAAA"])),
        ("neumann".to_string(), neumann()),
    ];
    for k in 1..=4 {
        out.push((format!("test{k}"), test_presentation(k).unwrap()));
    }
    out
}

fn parse_args(s: &str) -> Option<&str> {
    s.strip_prefix('(')?.strip_suffix(')')
}

/// Looks up a name such as `G1`, `AK2`, `AK(3)`, `trivial(4)`, `MS(2,yxyX)`,
/// or `test1`. Names are case-insensitive except for `MS` word arguments.
pub fn lookup(name: &str) -> Option<Presentation> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "g1" => return Some(ak(2)),
        "g2" => return catalog().into_iter().find(|(n, _)| n == "G2").map(|(_, p)| p),
        "g3" => return catalog().into_iter().find(|(n, _)| n == "G3").map(|(_, p)| p),
        "p1" | "rank3" => return catalog().into_iter().find(|(n, _)| n == "P1").map(|(_, p)| p),
        "p2" => return catalog().into_iter().find(|(n, _)| n == "P2").map(|(_, p)| p),
        "neumann" => return Some(neumann()),
        "trivial" | "x" => return Some(Presentation::trivial(2)),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix("test") {
        return test_presentation(rest.parse().ok()?);
    }
    if let Some(rest) = lower.strip_prefix("trivial") {
        let n: usize = parse_args(rest).unwrap_or(rest).parse().ok()?;
        return (n >= 1).then(|| Presentation::trivial(n));
    }
    if let Some(rest) = lower.strip_prefix("ak") {
        let n: usize = parse_args(rest).unwrap_or(rest).parse().ok()?;
        return (n >= 1).then(|| ak(n));
    }
    if name.len() > 2 && name[..2].eq_ignore_ascii_case("ms") {
        let args = parse_args(&name[2..])?;
        let (n, w) = args.split_once(',')?;
        let n: usize = n.trim().parse().ok()?;
        // accept x/y spellings as well as a/b
        let w: String = w
            .trim()
            .chars()
            .map(|c| match c {
                'x' => 'a',
                'y' => 'b',
                'X' => 'A',
                'Y' => 'B',
                c => c,
            })
            .collect();
        let w = parse_word(&w).ok()?;
        if w.rank_used() > 2 || n < 1 {
            return None;
        }
        return Some(miller_schupp(n, &w));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn named_entries() {
        assert_eq!(lookup("AK2").unwrap().relators(), &vec![w("aaBBB"), w("abaBAB")]);
        assert_eq!(lookup("AK(2)"), lookup("G1"));
        assert_eq!(lookup("G2").unwrap().relators(), &vec![w("baBAA"), w("AbbaBBB")]);
        assert_eq!(lookup("trivial(3)").unwrap(), Presentation::trivial(3));
        assert!(lookup("nonsense").is_none());
        assert!(lookup("AK0").is_none());
    }

    #[test]
    fn g3_is_miller_schupp() {
        assert_eq!(lookup("MS(2,yxyX)"), lookup("G3"));
        assert_eq!(miller_schupp(2, &w("bab")).relators()[0], w("AbbaBBB"));
    }

    #[test]
    fn test_presentations_are_neumann_compositions() {
        let t1 = test_presentation(1).unwrap();
        let r = w("aabbb");
        let s = w("aaabbbb");
        // r^s r⁻² with r^s = s⁻¹ r s
        let expect0 = s.inverse().multiply(&r).multiply(&s).multiply(&r.inverse()).multiply(&r.inverse());
        assert_eq!(t1.relators()[0], expect0);
        assert!(test_presentation(5).is_none());
    }

    #[test]
    fn test_bases_have_unimodular_exponents() {
        for k in 1..=2 {
            let h = test_base(k).unwrap();
            let a = h.relators()[0].exponent_sums(2);
            let b = h.relators()[1].exponent_sums(2);
            assert_eq!((a[0] * b[1] - a[1] * b[0]).abs(), 1);
        }
    }
}
