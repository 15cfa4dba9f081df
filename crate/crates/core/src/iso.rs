//! Canonical labelings of posets by color refinement and individualization.

use std::cmp::Ordering;

use crate::poset::{bit, Bits, GradedPoset};

/// Relabeling-invariant certificate: element count plus the sorted cover list
/// under the canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub covers: Vec<(u8, u8)>,
}

impl CanonicalForm {
    pub fn to_poset(&self) -> GradedPoset {
        let rel: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
        GradedPoset::build(self.n, &rel).expect("canonical covers form a poset")
    }
}

pub fn canonical_form(p: &GradedPoset) -> CanonicalForm {
    canonical_labeling(p).0
}

/// Canonical form together with `perm[old] = new`.
pub fn canonical_labeling(p: &GradedPoset) -> (CanonicalForm, Vec<usize>) {
    let n = p.n();
    let init: Vec<Vec<u32>> = (0..n)
        .map(|x| {
            vec![
                p.rank(x),
                p.below(x).count_ones(),
                p.above(x).count_ones(),
                p.lower_covers(x).count_ones(),
                p.upper_covers(x).count_ones(),
            ]
        })
        .collect();
    let colors = refine(p, recolor(&init));
    let mut best: Option<(CanonicalForm, Vec<usize>)> = None;
    search(p, colors, &mut best);
    best.expect("at least one leaf")
}

pub fn canonical_poset(p: &GradedPoset) -> GradedPoset {
    canonical_form(p).to_poset()
}

pub fn is_isomorphic(p: &GradedPoset, q: &GradedPoset) -> bool {
    p.n() == q.n()
        && p.cover_count() == q.cover_count()
        && p.rank_vector() == q.rank_vector()
        && canonical_form(p) == canonical_form(q)
}

/// Dense color indices from arbitrary sortable keys.
fn recolor<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

fn cells(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

fn refine(p: &GradedPoset, mut colors: Vec<usize>) -> Vec<usize> {
    let n = p.n();
    loop {
        let before = cells(&colors);
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut lo: Vec<usize> = Bits(p.lower_covers(x)).map(|y| colors[y]).collect();
                let mut up: Vec<usize> = Bits(p.upper_covers(x)).map(|y| colors[y]).collect();
                lo.sort_unstable();
                up.sort_unstable();
                (colors[x], lo, up)
            })
            .collect();
        colors = recolor(&keys);
        if cells(&colors) == before {
            return colors;
        }
    }
}

fn search(p: &GradedPoset, colors: Vec<usize>, best: &mut Option<(CanonicalForm, Vec<usize>)>) {
    let n = p.n();
    if cells(&colors) == n {
        let form = certificate(p, &colors);
        let better = match best {
            None => true,
            Some((b, _)) => form.cmp(b) == Ordering::Less,
        };
        if better {
            *best = Some((form, colors));
        }
        return;
    }
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let target = (0..n).find(|&c| count[c] > 1).expect("non-discrete coloring has a large cell");
    let members: Vec<usize> = (0..n).filter(|&x| colors[x] == target).collect();
    // Twins are interchangeable by an automorphism, so one of each suffices.
    let mut seen: Vec<(u64, u64)> = Vec::new();
    for &v in &members {
        let sig = (p.lower_covers(v), p.upper_covers(v));
        if seen.contains(&sig) {
            continue;
        }
        seen.push(sig);
        let keys: Vec<(usize, u8)> = (0..n).map(|x| (colors[x], u8::from(x != v))).collect();
        let next = refine(p, recolor(&keys));
        search(p, next, best);
    }
}

fn certificate(p: &GradedPoset, perm: &[usize]) -> CanonicalForm {
    let mut covers: Vec<(u8, u8)> = p
        .covers()
        .into_iter()
        .map(|(a, b)| (perm[a] as u8, perm[b] as u8))
        .collect();
    covers.sort_unstable();
    CanonicalForm { n: p.n(), covers }
}

/// Apply a canonical permutation to a mask.
pub fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    Bits(mask).fold(0, |m, x| m | bit(perm[x]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_vs_antichain() {
        let c = GradedPoset::chain(3).unwrap();
        let a = GradedPoset::antichain(3).unwrap();
        assert!(!is_isomorphic(&c, &a));
        assert!(is_isomorphic(&c, &c));
    }

    #[test]
    fn relabel_within_rank() {
        let p = GradedPoset::build(5, &[(0, 3), (1, 3), (1, 4), (2, 4)]).unwrap();
        let q = p.relabel(&[1, 0, 2, 3, 4]).unwrap();
        assert_ne!(p, q);
        assert!(is_isomorphic(&p, &q));
        assert_eq!(canonical_poset(&p), canonical_poset(&q));
    }

    #[test]
    fn distinguishes_same_statistics() {
        // A crown on 8 elements against two crowns on 4: refinement alone
        // cannot tell them apart.
        let p = GradedPoset::build(
            8,
            &[(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (0, 7)],
        )
        .unwrap();
        let q = GradedPoset::build(
            8,
            &[(0, 4), (1, 4), (0, 5), (1, 5), (2, 6), (3, 6), (2, 7), (3, 7)],
        )
        .unwrap();
        assert!(!is_isomorphic(&p, &q));
        let r = p.relabel(&[3, 0, 2, 1, 6, 7, 4, 5]).unwrap();
        assert!(is_isomorphic(&p, &r));
    }

    #[test]
    fn canonical_labels_are_rank_sorted() {
        let p = GradedPoset::build(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let c = canonical_poset(&p);
        assert_eq!(c.rank_vector(), p.rank_vector());
        for x in 1..c.n() {
            assert!(c.rank(x - 1) <= c.rank(x));
        }
    }
}
