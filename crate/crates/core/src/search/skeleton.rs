//! Posets with some covers fixed, some excluded and the rest open.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::poset::{bit, GradedPoset};

/// A graded poset in the making. Ranks are fixed in advance; a cover can
/// only join consecutive ranks, and every such pair is either required,
/// forbidden or undecided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPoset {
    /// 1-based rank of each element; elements are sorted by rank.
    pub rank: Vec<u32>,
    pub required: BTreeSet<(usize, usize)>,
    pub forbidden: BTreeSet<(usize, usize)>,
    /// Open covers in decision order.
    pub undecided: Vec<(usize, usize)>,
}

impl PartialPoset {
    /// Undecided covers are listed by descending rank of the upper element,
    /// then lexicographically.
    pub fn new(rank_vector: &[usize], required: &[(usize, usize)], forbidden: &[(usize, usize)]) -> Result<Self> {
        let rank: Vec<u32> = rank_vector
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| std::iter::repeat_n(r as u32 + 1, c))
            .collect();
        let n = rank.len();
        if n == 0 || n > crate::poset::MAX_ELEMENTS {
            return Err(Error::Capacity(n));
        }
        let check = |&(a, b): &(usize, usize)| -> Result<()> {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if rank[b] != rank[a] + 1 {
                return Err(Error::InvalidSearch(format!("{} and {} are not in consecutive ranks", a + 1, b + 1)));
            }
            Ok(())
        };
        let required: BTreeSet<_> = required.iter().copied().collect();
        let forbidden: BTreeSet<_> = forbidden.iter().copied().collect();
        for c in required.iter().chain(&forbidden) {
            check(c)?;
        }
        if let Some(&(a, b)) = required.intersection(&forbidden).next() {
            return Err(Error::InvalidSearch(format!("{} < {} is both required and forbidden", a + 1, b + 1)));
        }
        let mut undecided: Vec<(usize, usize)> = (0..n)
            .flat_map(|b| (0..n).map(move |a| (a, b)))
            .filter(|&(a, b)| rank[b] == rank[a] + 1)
            .filter(|c| !required.contains(c) && !forbidden.contains(c))
            .collect();
        undecided.sort_by_key(|&(a, b)| (std::cmp::Reverse(rank[b]), a, b));
        Ok(PartialPoset { rank, required, forbidden, undecided })
    }

    /// Parse `n <count>` followed by `+ i j` (required) and `- i j`
    /// (forbidden) lines, 1-based.
    pub fn from_text(text: &str, rank_vector: &[usize]) -> Result<Self> {
        let mut n = None;
        let mut req = Vec::new();
        let mut forb = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["n", c] => n = Some(c.parse::<usize>().map_err(|_| err("bad element count"))?),
                [sign @ ("+" | "-"), a, b] => {
                    let a: usize = a.parse().map_err(|_| err("bad element"))?;
                    let b: usize = b.parse().map_err(|_| err("bad element"))?;
                    if a == 0 || b == 0 {
                        return Err(err("elements are 1-based"));
                    }
                    if *sign == "+" {
                        req.push((a - 1, b - 1));
                    } else {
                        forb.push((a - 1, b - 1));
                    }
                }
                _ => return Err(err("expected `n <count>`, `+ i j` or `- i j`")),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n <count>` line".into() })?;
        if n != rank_vector.iter().sum::<usize>() {
            return Err(Error::InvalidSearch(format!("skeleton has {n} elements, rank vector disagrees")));
        }
        Self::new(rank_vector, &req, &forb)
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    /// Move an undecided cover into the required or forbidden set.
    pub fn fix(&mut self, cover: (usize, usize), present: bool) -> Result<()> {
        let pos = self
            .undecided
            .iter()
            .position(|&c| c == cover)
            .ok_or_else(|| Error::InvalidSearch(format!("{} < {} is not undecided", cover.0 + 1, cover.1 + 1)))?;
        self.undecided.remove(pos);
        if present {
            self.required.insert(cover);
        } else {
            self.forbidden.insert(cover);
        }
        Ok(())
    }

    /// Lower cover masks of the completion adding `chosen` to the required
    /// covers.
    pub fn lower_masks(&self, chosen: &[(usize, usize)]) -> Vec<u64> {
        let mut lower = vec![0u64; self.n()];
        for &(a, b) in self.required.iter().chain(chosen) {
            lower[b] |= bit(a);
        }
        lower
    }

    pub fn complete(&self, chosen: &[(usize, usize)]) -> Result<GradedPoset> {
        let rel: Vec<(usize, usize)> = self.required.iter().chain(chosen).copied().collect();
        GradedPoset::build(self.n(), &rel)
    }

    /// Whether `p`, labeled like the skeleton, has every required cover and
    /// no forbidden one.
    pub fn admits(&self, p: &GradedPoset) -> bool {
        p.n() == self.n()
            && (0..p.n()).all(|x| p.rank(x) == self.rank[x])
            && self.required.iter().all(|&(a, b)| p.lower_covers(b) & bit(a) != 0)
            && self.forbidden.iter().all(|&(a, b)| p.lower_covers(b) & bit(a) == 0)
    }
}

/// The 60-element skeleton for H4, with `9 < 13` required and `8 < 13`
/// forbidden on top of the bundled data.
pub fn h4_skeleton() -> PartialPoset {
    let rv = crate::profile::RootSystemProfile::h4().rank_vector;
    let mut s = PartialPoset::from_text(fixtures::H4_SKELETON, &rv).expect("bundled skeleton is valid");
    s.fix((8, 12), true).expect("open in the data");
    s.fix((7, 12), false).expect("open in the data");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undecided_split() {
        let s = h4_skeleton();
        let below = s.undecided.iter().filter(|&&(_, b)| b < 36).count();
        let above = s.undecided.iter().filter(|&&(a, _)| a >= 34).count();
        assert_eq!(below, 37);
        assert_eq!(above, 14);
        assert_eq!(s.undecided.len(), 51);
    }

    #[test]
    fn decision_order_starts_at_the_top_of_the_lower_part() {
        let s = h4_skeleton();
        let lower: Vec<_> = s.undecided.iter().filter(|&&(_, b)| b < 36).take(6).collect();
        assert!(lower.iter().all(|&&(a, b)| (31..34).contains(&a) && (34..36).contains(&b)));
    }

    #[test]
    fn rejects_conflicts() {
        assert!(PartialPoset::new(&[1, 1], &[(0, 1)], &[(0, 1)]).is_err());
        assert!(PartialPoset::new(&[2, 1], &[(0, 1)], &[]).is_err());
    }
}
