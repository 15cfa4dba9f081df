//! Bundled reference data.

use crate::poset::GradedPoset;

pub const PROFILES_TOML: &str = include_str!("../data/profiles.toml");
pub const H3_POSET: &str = include_str!("../data/h3.poset");
pub const H4_SKELETON: &str = include_str!("../data/h4_skeleton.txt");
pub const D6_PAIRS: &str = include_str!("../data/d6_pairs.txt");
pub const H4_CANDIDATES: [&str; 4] = [
    include_str!("../data/h4_candidate_1.poset"),
    include_str!("../data/h4_candidate_2.poset"),
    include_str!("../data/h4_candidate_3.poset"),
    include_str!("../data/h4_candidate_4.poset"),
];

pub fn h3_poset() -> GradedPoset {
    GradedPoset::from_text(H3_POSET).expect("bundled H3 poset parses")
}

/// The four 60-element posets passing Properties 1-4 and 5(a).
pub fn h4_candidates() -> Vec<GradedPoset> {
    H4_CANDIDATES
        .iter()
        .map(|t| GradedPoset::from_text(t).expect("bundled H4 poset parses"))
        .collect()
}

/// Root poset of `I2(m)`: two simples under a chain of `m - 2` elements.
pub fn dihedral_poset(m: usize) -> GradedPoset {
    assert!(m >= 2, "dihedral order must be at least 2");
    let mut rel = Vec::new();
    if m >= 3 {
        rel.push((0, 2));
        rel.push((1, 2));
        rel.extend((3..m).map(|i| (i - 1, i)));
    }
    GradedPoset::build(m, &rel).expect("dihedral poset")
}

/// Bundled D6 positive roots as `(left, right)` pairs, `left = tau * right`.
pub fn d6_pairs() -> Vec<([i32; 6], [i32; 6])> {
    let parse = |s: &str| -> [i32; 6] {
        let v: Vec<i32> = s.split_whitespace().map(|x| x.parse().expect("integer coordinate")).collect();
        v.try_into().expect("six coordinates")
    };
    D6_PAIRS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('|').expect("pair separator");
            (parse(a), parse(b))
        })
        .collect()
}
