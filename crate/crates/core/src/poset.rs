//! Graded posets on at most 64 elements, stored as bit masks.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 64;

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Antichain(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrderIdeal(pub u64);

macro_rules! mask_set {
    ($t:ty) => {
        impl $t {
            pub fn mask(self) -> u64 {
                self.0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn contains(self, x: usize) -> bool {
                x < 64 && self.0 & bit(x) != 0
            }

            pub fn elements(self) -> Bits {
                Bits(self.0)
            }
        }
    };
}

mask_set!(Antichain);
mask_set!(OrderIdeal);

/// An immutable finite poset. Elements are `0..n`, sorted by rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPoset {
    n: usize,
    lower: Vec<u64>,
    upper: Vec<u64>,
    below: Vec<u64>,
    above: Vec<u64>,
    rank: Vec<u32>,
}

impl GradedPoset {
    /// Build a poset from pairs `(a, b)` meaning `a < b`. Indices are 0-based.
    pub fn build(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        Self::build_with_map(n, relations).map(|(p, _)| p)
    }

    /// Like [`GradedPoset::build`], also returning `map[old] = new` for the
    /// rank-sorted relabeling.
    pub fn build_with_map(n: usize, relations: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::Capacity(n));
        }
        let mut less = vec![0u64; n];
        for &(a, b) in relations {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(Error::Cycle(a));
            }
            less[b] |= bit(a);
        }

        // Kahn's algorithm on the raw relation.
        let mut indeg: Vec<u32> = less.iter().map(|m| m.count_ones()).collect();
        let mut greater = vec![0u64; n];
        for (b, &m) in less.iter().enumerate() {
            for a in Bits(m) {
                greater[a] |= bit(b);
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop() {
            topo.push(x);
            for y in Bits(greater[x]) {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
            return Err(Error::Cycle(stuck));
        }

        let mut below = vec![0u64; n];
        let mut rank = vec![1u32; n];
        for &x in &topo {
            let mut m = 0;
            let mut r = 1;
            for a in Bits(less[x]) {
                m |= below[a] | bit(a);
                r = r.max(rank[a] + 1);
            }
            below[x] = m;
            rank[x] = r;
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| rank[x]);
        let mut map = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let remap = |m: u64| Bits(m).fold(0u64, |acc, x| acc | bit(map[x]));
        let mut new_below = vec![0u64; n];
        let mut new_rank = vec![0u32; n];
        for old in 0..n {
            new_below[map[old]] = remap(below[old]);
            new_rank[map[old]] = rank[old];
        }
        Ok((Self::from_closure(new_below, new_rank), map))
    }

    /// Assemble from a strict-below closure whose labels are already rank sorted.
    fn from_closure(below: Vec<u64>, rank: Vec<u32>) -> Self {
        let n = below.len();
        let mut lower = vec![0u64; n];
        for y in 0..n {
            let mut indirect = 0;
            for z in Bits(below[y]) {
                indirect |= below[z];
            }
            lower[y] = below[y] & !indirect;
        }
        let mut upper = vec![0u64; n];
        let mut above = vec![0u64; n];
        for y in 0..n {
            for x in Bits(lower[y]) {
                upper[x] |= bit(y);
            }
            for x in Bits(below[y]) {
                above[x] |= bit(y);
            }
        }
        GradedPoset { n, lower, upper, below, above, rank }
    }

    /// Build from lower cover masks on elements that are already rank sorted
    /// (every lower cover has a smaller index). Used by the search engines.
    pub(crate) fn from_lower_covers(lower: &[u64]) -> Self {
        let n = lower.len();
        let mut below = vec![0u64; n];
        let mut rank = vec![1u32; n];
        for y in 0..n {
            let mut m = 0;
            let mut r = 1;
            for x in Bits(lower[y]) {
                debug_assert!(x < y);
                m |= below[x] | bit(x);
                r = r.max(rank[x] + 1);
            }
            below[y] = m;
            rank[y] = r;
        }
        Self::from_closure(below, rank)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn lower_covers(&self, x: usize) -> u64 {
        self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> u64 {
        self.upper[x]
    }

    pub fn below(&self, x: usize) -> u64 {
        self.below[x]
    }

    pub fn above(&self, x: usize) -> u64 {
        self.above[x]
    }

    pub fn rank(&self, x: usize) -> u32 {
        self.rank[x]
    }

    pub fn max_rank(&self) -> u32 {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Elements comparable to `x`, excluding `x`.
    pub fn comparable(&self, x: usize) -> u64 {
        self.below[x] | self.above[x]
    }

    pub fn order_leq(&self, x: usize, y: usize) -> bool {
        x == y || self.below[y] & bit(x) != 0
    }

    /// Cover relations `(lower, upper)` in lexicographic order, 0-based.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|y| Bits(self.lower[y]).map(move |x| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.lower.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_graded(&self) -> bool {
        (0..self.n).all(|y| Bits(self.lower[y]).all(|x| self.rank[y] == self.rank[x] + 1))
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        let mut v = vec![0usize; self.max_rank() as usize];
        for &r in &self.rank {
            v[r as usize - 1] += 1;
        }
        v
    }

    /// Mask of all elements of rank `r`.
    pub fn rank_mask(&self, r: u32) -> u64 {
        (0..self.n).filter(|&x| self.rank[x] == r).fold(0, |m, x| m | bit(x))
    }

    pub fn minimals(&self) -> Antichain {
        Antichain((0..self.n).filter(|&x| self.below[x] == 0).fold(0, |m, x| m | bit(x)))
    }

    pub fn maximals(&self) -> Antichain {
        Antichain((0..self.n).filter(|&x| self.above[x] == 0).fold(0, |m, x| m | bit(x)))
    }

    pub fn is_antichain(&self, mask: u64) -> bool {
        mask & !self.all() == 0 && Bits(mask).all(|x| self.below[x] & mask == 0)
    }

    pub fn is_order_ideal(&self, mask: u64) -> bool {
        mask & !self.all() == 0 && Bits(mask).all(|x| self.below[x] & !mask == 0)
    }

    /// Down-closure of an arbitrary mask.
    #[inline]
    pub fn down_closure(&self, mask: u64) -> u64 {
        let mut m = mask;
        for x in Bits(mask) {
            m |= self.below[x];
        }
        m
    }

    /// Maximal elements of an arbitrary mask.
    #[inline]
    pub fn max_of(&self, mask: u64) -> u64 {
        let mut m = mask;
        for x in Bits(mask) {
            m &= !self.below[x];
        }
        m
    }

    /// Minimal elements of an arbitrary mask.
    #[inline]
    pub fn min_of(&self, mask: u64) -> u64 {
        let mut m = mask;
        for x in Bits(mask) {
            m &= !self.above[x];
        }
        m
    }

    pub fn ideal_of(&self, a: Antichain) -> Result<OrderIdeal> {
        if !self.is_antichain(a.0) {
            return Err(Error::NotAnAntichain { mask: a.0 });
        }
        Ok(OrderIdeal(self.down_closure(a.0)))
    }

    pub fn crown(&self, ideal: OrderIdeal) -> Result<Antichain> {
        if !self.is_order_ideal(ideal.0) {
            return Err(Error::NotAnOrderIdeal { mask: ideal.0 });
        }
        Ok(Antichain(self.max_of(ideal.0)))
    }

    /// All antichains in ascending order of their masks.
    pub fn antichains(&self) -> AntichainIter<'_> {
        AntichainIter { poset: self, stack: vec![(self.n, 0, 0)] }
    }

    /// Visit all antichains in ascending mask order; stop early when `f`
    /// returns `false`. Returns whether the walk completed.
    pub fn for_each_antichain<F: FnMut(u64) -> bool>(&self, mut f: F) -> bool {
        let comp: Vec<u64> = (0..self.n).map(|x| self.comparable(x)).collect();
        fn rec<F: FnMut(u64) -> bool>(comp: &[u64], i: usize, mask: u64, forb: u64, f: &mut F) -> bool {
            if i == 0 {
                return f(mask);
            }
            let x = i - 1;
            if !rec(comp, x, mask, forb, f) {
                return false;
            }
            if forb & bit(x) == 0 {
                return rec(comp, x, mask | bit(x), forb | comp[x], f);
            }
            true
        }
        rec(&comp, self.n, 0, 0, &mut f)
    }

    pub fn count_antichains(&self) -> usize {
        let mut c = 0;
        self.for_each_antichain(|_| {
            c += 1;
            true
        });
        c
    }

    /// Minimal elements lying below or equal to `x`.
    pub fn support(&self, x: usize) -> u64 {
        (self.below[x] | bit(x)) & self.minimals().0
    }

    /// Induced subposet on `mask`, relabeled rank sorted with covers recomputed.
    pub fn induced(&self, mask: u64) -> GradedPoset {
        let keep: Vec<usize> = Bits(mask & self.all()).collect();
        let mut rel = Vec::new();
        for (j, &y) in keep.iter().enumerate() {
            for (i, &x) in keep.iter().enumerate() {
                if self.below[y] & bit(x) != 0 {
                    rel.push((i, j));
                }
            }
        }
        GradedPoset::build(keep.len().max(1), &rel).expect("induced order is acyclic")
    }

    pub fn parabolic_mask(&self, simples: u64) -> Result<u64> {
        let mins = self.minimals().0;
        if let Some(x) = Bits(simples & !mins).next() {
            return Err(Error::NotMinimal(x));
        }
        Ok((0..self.n)
            .filter(|&x| self.support(x) & !simples == 0)
            .fold(0, |m, x| m | bit(x)))
    }

    /// Subposet of elements whose support lies in `simples`.
    pub fn parabolic_subposet(&self, simples: u64) -> Result<GradedPoset> {
        let mask = self.parabolic_mask(simples)?;
        if mask == 0 {
            return Err(Error::Capacity(0));
        }
        Ok(self.induced(mask))
    }

    pub fn delete_minimals(&self) -> Result<GradedPoset> {
        let rest = self.all() & !self.minimals().0;
        if rest == 0 {
            return Err(Error::Capacity(0));
        }
        Ok(self.induced(rest))
    }

    pub fn disjoint_union(&self, other: &GradedPoset) -> Result<GradedPoset> {
        let n = self.n + other.n;
        let mut rel: Vec<(usize, usize)> = self.covers();
        rel.extend(other.covers().into_iter().map(|(a, b)| (a + self.n, b + self.n)));
        GradedPoset::build(n, &rel)
    }

    /// Apply `perm[old] = new`, then re-sort by rank.
    pub fn relabel(&self, perm: &[usize]) -> Result<GradedPoset> {
        if perm.len() != self.n {
            return Err(Error::IndexOutOfRange { index: perm.len(), n: self.n });
        }
        let rel: Vec<(usize, usize)> = self.covers().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        GradedPoset::build(self.n, &rel)
    }

    /// Text form: `n <count>` then one `i j` line per cover, 1-based.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (a, b) in self.covers() {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<GradedPoset> {
        let mut n: Option<usize> = None;
        let mut rel = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: no + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(err("expected header `n <count>`"));
                    }
                    let count = fields[1].parse::<usize>().map_err(|_| err("bad element count"))?;
                    if count == 0 || count > MAX_ELEMENTS {
                        return Err(Error::Capacity(count));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    if fields.len() != 2 {
                        return Err(err("expected `i j`"));
                    }
                    let a = fields[0].parse::<usize>().map_err(|_| err("bad element"))?;
                    let b = fields[1].parse::<usize>().map_err(|_| err("bad element"))?;
                    if a == 0 || b == 0 || a > count || b > count {
                        return Err(err("element out of range"));
                    }
                    rel.push((a - 1, b - 1));
                }
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
        GradedPoset::build(n, &rel)
    }

    pub fn chain(n: usize) -> Result<GradedPoset> {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        GradedPoset::build(n, &rel)
    }

    pub fn antichain(n: usize) -> Result<GradedPoset> {
        GradedPoset::build(n, &[])
    }
}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoset(n={}, covers={:?})", self.n, self.covers())
    }
}

impl fmt::Display for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Antichains in ascending mask order, driven by an explicit stack.
pub struct AntichainIter<'a> {
    poset: &'a GradedPoset,
    stack: Vec<(usize, u64, u64)>,
}

impl Iterator for AntichainIter<'_> {
    type Item = Antichain;

    fn next(&mut self) -> Option<Antichain> {
        while let Some((i, mask, forb)) = self.stack.pop() {
            if i == 0 {
                return Some(Antichain(mask));
            }
            let x = i - 1;
            if forb & bit(x) == 0 {
                self.stack.push((x, mask | bit(x), forb | self.poset.comparable(x)));
            }
            self.stack.push((x, mask, forb));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_antichains(p: &GradedPoset) -> Vec<u64> {
        (0..1u64 << p.n()).filter(|&m| p.is_antichain(m)).collect()
    }

    #[test]
    fn chain_reduction() {
        let p = GradedPoset::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.rank_vector(), vec![1, 1, 1]);
    }

    #[test]
    fn empty_relation() {
        let p = GradedPoset::build(2, &[]).unwrap();
        assert_eq!(p.below(0), 0);
        assert_eq!(p.below(1), 0);
        assert_eq!(p.minimals(), Antichain(0b11));
        assert_eq!(p.maximals(), Antichain(0b11));
    }

    #[test]
    fn errors() {
        assert_eq!(GradedPoset::build(0, &[]), Err(Error::Capacity(0)));
        assert_eq!(GradedPoset::build(65, &[]), Err(Error::Capacity(65)));
        assert!(matches!(GradedPoset::build(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(_))));
        assert_eq!(GradedPoset::build(2, &[(0, 2)]), Err(Error::IndexOutOfRange { index: 2, n: 2 }));
    }

    #[test]
    fn rank_sorting_is_stable() {
        let (p, map) = GradedPoset::build_with_map(4, &[(3, 0), (2, 1)]).unwrap();
        assert_eq!(map, vec![2, 3, 0, 1]);
        assert_eq!(p.covers(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn ungraded_skew() {
        let p = GradedPoset::build(4, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        assert!(p.is_graded());
        // 3 is minimal but sits directly under the rank-3 element.
        let skew = GradedPoset::build(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert!(!skew.is_graded());
    }

    #[test]
    fn iterator_matches_brute_force() {
        let p = GradedPoset::build(6, &[(0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5)]).unwrap();
        let it: Vec<u64> = p.antichains().map(|a| a.0).collect();
        assert_eq!(it, brute_antichains(&p));
        let mut cb = Vec::new();
        p.for_each_antichain(|m| {
            cb.push(m);
            true
        });
        assert_eq!(cb, it);
    }

    #[test]
    fn single_element() {
        let p = GradedPoset::build(1, &[]).unwrap();
        assert_eq!(p.count_antichains(), 2);
        assert_eq!(p.delete_minimals(), Err(Error::Capacity(0)));
    }

    #[test]
    fn ideal_and_crown() {
        let p = GradedPoset::build(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(p.ideal_of(Antichain(0b100)).unwrap(), OrderIdeal(0b111));
        assert_eq!(p.ideal_of(Antichain(0)).unwrap(), OrderIdeal(0));
        assert!(p.ideal_of(Antichain(0b101)).is_err());
        assert!(p.crown(OrderIdeal(0b100)).is_err());
        assert_eq!(p.crown(OrderIdeal(0b011)).unwrap(), Antichain(0b011));
    }

    #[test]
    fn text_round_trip() {
        let p = GradedPoset::build(4, &[(0, 2), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = p.to_text();
        assert_eq!(text, "n 4\n1 3\n2 3\n3 4\n");
        assert_eq!(GradedPoset::from_text(&text).unwrap(), p);
        assert!(GradedPoset::from_text("").is_err());
        assert!(GradedPoset::from_text("n 2\n1 3\n").is_err());
    }

    #[test]
    fn parabolic_rejects_non_minimal() {
        let p = GradedPoset::chain(3).unwrap();
        assert_eq!(p.parabolic_subposet(0b010), Err(Error::NotMinimal(1)));
        assert_eq!(p.parabolic_subposet(0b001).unwrap().n(), 3);
    }

    #[test]
    fn delete_minimals_of_chain() {
        let p = GradedPoset::chain(3).unwrap();
        assert_eq!(p.delete_minimals().unwrap(), GradedPoset::chain(2).unwrap());
    }
}
