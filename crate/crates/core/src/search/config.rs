//! Cover patterns between two consecutive ranks.

use serde::Serialize;

use crate::poset::{bit, full_mask, Bits};

/// Covers between a lower rank of `lower_size` vertices and an upper rank of
/// `upper_size` vertices. `pattern[u]` is the mask of lower vertices covered
/// by upper vertex `u`; the list is sorted, which makes it canonical under
/// permutations of the upper vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RankConfiguration {
    pub lower_size: usize,
    pub upper_size: usize,
    pub pattern: Vec<u64>,
}

impl RankConfiguration {
    /// Largest antichain inside the two ranks, ignoring `exempt` (a set of
    /// lower vertices allowed to form an antichain on their own).
    pub fn max_antichain(&self, exempt: Option<u64>) -> usize {
        let lower_all = full_mask(self.lower_size);
        let u = self.upper_size;
        let mut best = 0;
        for t in 0..1u64 << u {
            let covered = Bits(t).fold(0, |m, k| m | self.pattern[k]);
            let free = lower_all & !covered;
            let size = t.count_ones() as usize + free.count_ones() as usize;
            let size = if t == 0 && Some(free) == exempt {
                // The exempt set itself is fine; its proper subsets are smaller.
                size.saturating_sub(1)
            } else {
                size
            };
            best = best.max(size);
        }
        best
    }

    /// Relabel the lower vertices by `perm[old] = new` and re-sort.
    pub fn permute_lower(&self, perm: &[usize]) -> RankConfiguration {
        let mut pattern: Vec<u64> =
            self.pattern.iter().map(|&m| Bits(m).fold(0, |acc, x| acc | bit(perm[x]))).collect();
        pattern.sort_unstable();
        RankConfiguration { pattern, ..self.clone() }
    }
}

/// All patterns in which every upper vertex covers something and every lower
/// vertex is covered, with no antichain of `limit` or more vertices inside
/// the two ranks (the `exempt` lower set excepted).
pub fn configurations(
    lower_size: usize,
    upper_size: usize,
    limit: Option<usize>,
    exempt: Option<u64>,
) -> Vec<RankConfiguration> {
    assert!(lower_size >= 1 && upper_size >= 1 && lower_size <= 16, "unsupported rank sizes");
    let full = full_mask(lower_size);
    let mut out = Vec::new();
    let mut pattern = Vec::with_capacity(upper_size);
    multisets(full, upper_size, 1, 0, &mut pattern, &mut |p| {
        let c = RankConfiguration { lower_size, upper_size, pattern: p.to_vec() };
        if limit.is_none_or(|l| c.max_antichain(exempt) < l) {
            out.push(c);
        }
    });
    out
}

fn multisets(full: u64, left: usize, from: u64, union: u64, acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if left == 0 {
        if union == full {
            f(acc);
        }
        return;
    }
    for m in from..=full {
        acc.push(m);
        multisets(full, left - 1, m, union | m, acc, f);
        acc.pop();
    }
}

/// Patterns under the antichain restriction used for root posets of rank
/// `n`: the only antichain with `n` elements is the set of simple roots.
pub fn rank_configurations(lower_size: usize, upper_size: usize) -> Vec<RankConfiguration> {
    configurations(lower_size, upper_size, Some(4), None)
}

/// Keep one representative per orbit of lower-vertex permutations.
pub fn symmetric_lower_representatives(configs: Vec<RankConfiguration>) -> Vec<RankConfiguration> {
    let l = configs.first().map_or(0, |c| c.lower_size);
    let perms = permutations(l);
    configs
        .into_iter()
        .filter(|c| perms.iter().all(|p| c.permute_lower(p) >= *c))
        .collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}
