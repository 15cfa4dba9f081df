//! Rank-by-rank enumeration: each step chooses a cover configuration between
//! the current top rank and the next one.

use crate::error::{Error, Result};
use crate::invariants::{Checker, Property};
use crate::iso::{canonical_form, CanonicalForm};
use crate::poset::{bit, full_mask, Bits, GradedPoset};
use crate::profile::RootSystemProfile;

use super::config::{configurations, symmetric_lower_representatives, RankConfiguration};
use super::{run, Engine, OrbitRule, SearchOptions, SearchOutcome, SearchStats};

pub struct V2Search {
    checker: Checker,
    rank_vector: Vec<usize>,
    seed: Vec<u64>,
    seed_level: usize,
    /// `pruned[l]` and `full[l]` hold the configurations from rank `l + 1`
    /// to rank `l + 2`.
    pruned: Vec<Vec<RankConfiguration>>,
    full: Vec<Vec<RankConfiguration>>,
    bounds: Bounds,
}

#[derive(Default)]
struct Bounds {
    catalan: Option<u64>,
    /// `h[k][m]` from the H-triangle.
    h: Option<Vec<Vec<u64>>>,
    orbits: OrbitRule,
    ideals: Vec<Vec<u64>>,
    /// Sorted canonical forms of the parabolic references cut off above
    /// each rank, indexed by rank minus one.
    parabolic: Option<Vec<Vec<CanonicalForm>>>,
}

#[derive(Clone, Debug)]
pub struct V2Unit {
    pub lower: Vec<u64>,
    pub level: usize,
}

impl V2Search {
    pub fn new(profile: &RootSystemProfile, filters: &[Property]) -> Result<Self> {
        Self::with_checker(Checker::new(profile, filters)?)
    }

    pub fn with_checker(checker: Checker) -> Result<Self> {
        let profile = checker.profile().clone();
        let rv = profile.rank_vector.clone();
        if rv.iter().sum::<usize>() > crate::poset::MAX_ELEMENTS {
            return Err(Error::Capacity(rv.iter().sum()));
        }
        let sel = checker.selection().to_vec();
        let has = |p: Property| sel.contains(&p);
        let n = profile.rank;

        let mut bounds = Bounds::default();
        if has(Property::Catalan) || has(Property::HTriangle) {
            bounds.catalan = u64::try_from(profile.catalan).ok();
        }
        let mut limit = None;
        if has(Property::HTriangle) {
            let t = profile.h_triangle.as_ref().expect("checker requires it");
            let mut h = vec![vec![0u64; t.max_size() + 1]; t.max_k() + 1];
            for ((k, m), c) in t.entries() {
                h[k][m] = c;
            }
            bounds.h = Some(h);
            let m = t.max_size();
            limit = Some(if m == n && t.column(m) == 1 && t.get(n, n) == 1 { (n, true) } else { (m + 1, false) });
        }
        bounds.orbits = OrbitRule::from_checker(&checker);
        if has(Property::Parabolic) && n >= 2 {
            let refs = profile.parabolic_references()?;
            let cuts = (1..=rv.len() as u32)
                .map(|r| {
                    let mut forms: Vec<CanonicalForm> =
                        refs.iter().map(|q| canonical_form(&below_rank(q, r))).collect();
                    forms.sort();
                    forms
                })
                .collect();
            bounds.parabolic = Some(cuts);
        }
        if has(Property::IdealSizes) {
            bounds.ideals = checker.ideal_targets().to_vec();
        }

        let mut pruned = Vec::new();
        let mut full = Vec::new();
        for l in 0..rv.len().saturating_sub(1) {
            let (lo, up) = (rv[l], rv[l + 1]);
            full.push(configurations(lo, up, None, None));
            let mut c = match limit {
                Some((lim, exempt)) => {
                    configurations(lo, up, Some(lim), (exempt && l == 0).then(|| full_mask(lo)))
                }
                None => configurations(lo, up, None, None),
            };
            if l == 0 {
                c = symmetric_lower_representatives(c);
            }
            pruned.push(c);
        }
        let seed = vec![0u64; rv[0]];
        Ok(V2Search { checker, rank_vector: rv, seed, seed_level: 1, pruned, full, bounds })
    }

    /// Start from the bottom ranks of `seed` instead of the simples alone.
    pub fn with_seed(mut self, seed: &GradedPoset) -> Result<Self> {
        let rv = seed.rank_vector();
        if rv.len() > self.rank_vector.len() || rv[..] != self.rank_vector[..rv.len()] {
            return Err(Error::InvalidSearch(format!(
                "seed rank vector {rv:?} is not a prefix of {:?}",
                self.rank_vector
            )));
        }
        if !seed.is_graded() {
            return Err(Error::InvalidSearch("seed is not graded".into()));
        }
        self.seed = (0..seed.n()).map(|x| seed.lower_covers(x)).collect();
        self.seed_level = rv.len();
        Ok(self)
    }

    pub fn checker(&self) -> &Checker {
        &self.checker
    }

    pub fn configurations_at(&self, level: usize, prune: bool) -> &[RankConfiguration] {
        if prune {
            &self.pruned[level - 1]
        } else {
            &self.full[level - 1]
        }
    }

    pub fn run(&self, opts: &SearchOptions) -> Result<SearchOutcome> {
        run(self, opts)
    }

    fn depth(&self) -> usize {
        self.rank_vector.len()
    }

    fn children(&self, lower: &[u64], level: usize, prune: bool) -> impl Iterator<Item = Vec<u64>> + '_ {
        let base = lower.len();
        let start = base - self.rank_vector[level - 1];
        let parent = lower.to_vec();
        self.configurations_at(level, prune).iter().map(move |c| {
            let mut next = parent.clone();
            next.extend(c.pattern.iter().map(|&m| m << start));
            debug_assert_eq!(next.len(), base + c.upper_size);
            next
        })
    }

    fn descend(&self, lower: &mut Vec<u64>, level: usize, prune: bool, stats: &mut SearchStats, out: &mut Vec<GradedPoset>) {
        stats.nodes += 1;
        if prune && !self.admissible(lower, level) {
            return;
        }
        if level == self.depth() {
            stats.leaves += 1;
            let p = GradedPoset::from_lower_covers(lower);
            if self.checker.check(&p).passed() {
                stats.hits += 1;
                out.push(p);
            }
            return;
        }
        let base = lower.len();
        let start = base - self.rank_vector[level - 1];
        for c in self.configurations_at(level, prune) {
            lower.extend(c.pattern.iter().map(|&m| m << start));
            self.descend(lower, level + 1, prune, stats, out);
            lower.truncate(base);
        }
    }

    /// Necessary conditions on the poset formed by the first `level` ranks.
    /// Every antichain of this fragment is an antichain of each completion,
    /// with the same comparabilities.
    fn admissible(&self, lower: &[u64], level: usize) -> bool {
        let b = &self.bounds;
        let need_ideals = b.orbits.is_active() || !b.ideals.is_empty();
        if b.catalan.is_none() && b.h.is_none() && b.parabolic.is_none() && !need_ideals {
            return true;
        }
        let p = GradedPoset::from_lower_covers(lower);
        let simples = full_mask(self.rank_vector[0]);

        // Parabolic subposets are order ideals, so the fragment holds their
        // bottom `level` ranks.
        if let Some(cuts) = &b.parabolic {
            let mut forms: Vec<CanonicalForm> = Bits(simples)
                .map(|s| {
                    let mask = p.parabolic_mask(simples & !bit(s)).expect("rank one is minimal");
                    canonical_form(&p.induced(mask))
                })
                .collect();
            forms.sort();
            if forms != cuts[level - 1] {
                return false;
            }
        }
        let top = p.all() & !full_mask(lower.len() - self.rank_vector[level - 1]);

        let mut counts = vec![vec![0u64; 65]; self.rank_vector[0] + 1];
        let mut total = 0u64;
        let mut antichains = Vec::new();
        let ok = p.for_each_antichain(|a| {
            total += 1;
            let (k, m) = ((a & simples).count_ones() as usize, a.count_ones() as usize);
            counts[k][m] += 1;
            if b.catalan.is_some_and(|c| total > c) {
                return false;
            }
            if let Some(h) = &b.h {
                if h.get(k).and_then(|r| r.get(m)).copied().unwrap_or(0) < counts[k][m] {
                    return false;
                }
            }
            if need_ideals {
                antichains.push(a);
            }
            true
        });
        if !ok {
            return false;
        }

        // Once the top rank lies above every simple, no later element joins
        // an antichain containing a simple.
        if let Some(h) = &b.h {
            if level >= 2 && Bits(top).all(|x| p.below(x) & simples == simples) {
                for (k, row) in counts.iter().enumerate().skip(1) {
                    for (m, &c) in row.iter().enumerate() {
                        if h.get(k).and_then(|r| r.get(m)).copied().unwrap_or(0) != c {
                            return false;
                        }
                    }
                }
            }
        }

        if !need_ideals {
            return true;
        }
        let ideals: Vec<u64> = antichains.iter().map(|&a| p.down_closure(a)).collect();
        // Orbits whose ideals avoid the top rank are orbits of every
        // completion.
        if b.orbits.is_active() && !b.orbits.admits(&p, &antichains, &ideals, |i| i & top == 0) {
            return false;
        }
        if !b.ideals.is_empty() {
            let mut sizes = vec![0u64; p.n() + 1];
            for &i in &ideals {
                sizes[i.count_ones() as usize] += 1;
            }
            // A later element lies above some element of the top rank, so
            // every ideal reaching it is larger than the smallest principal
            // ideal of the top rank.
            let exact = if level == self.depth() {
                usize::MAX
            } else {
                Bits(top).map(|x| p.below(x).count_ones() as usize + 1).min().unwrap_or(0)
            };
            let fits = |t: &Vec<u64>| {
                sizes.iter().enumerate().all(|(s, &c)| {
                    let want = t.get(s).copied().unwrap_or(0);
                    if s <= exact {
                        c == want
                    } else {
                        c <= want
                    }
                })
            };
            if !b.ideals.iter().any(fits) {
                return false;
            }
        }
        true
    }
}

fn below_rank(p: &GradedPoset, r: u32) -> GradedPoset {
    let mask = (0..p.n()).filter(|&x| p.rank(x) <= r).fold(0, |m, x| m | bit(x));
    p.induced(mask)
}

impl Engine for V2Search {
    type Unit = V2Unit;

    fn split(&self, depth: usize, prune: bool) -> Vec<V2Unit> {
        let mut frontier = vec![V2Unit { lower: self.seed.clone(), level: self.seed_level }];
        for _ in 0..depth {
            let mut next = Vec::new();
            for u in frontier {
                if u.level == self.depth() {
                    next.push(u);
                    continue;
                }
                if prune && !self.admissible(&u.lower, u.level) {
                    continue;
                }
                next.extend(self.children(&u.lower, u.level, prune).map(|lower| V2Unit { lower, level: u.level + 1 }));
            }
            frontier = next;
        }
        frontier
    }

    fn run_unit(&self, unit: &V2Unit, prune: bool, stats: &mut SearchStats) -> Vec<GradedPoset> {
        let mut out = Vec::new();
        let mut lower = unit.lower.clone();
        self.descend(&mut lower, unit.level, prune, stats, &mut out);
        out
    }
}

/// Rank-by-rank search for posets with the rank vector of `profile` that pass
/// every property in `filters`.
pub fn search_v2(
    profile: &RootSystemProfile,
    filters: &[Property],
    seed: Option<&GradedPoset>,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let mut s = V2Search::new(profile, filters)?;
    if let Some(seed) = seed {
        s = s.with_seed(seed)?;
    }
    s.run(opts)
}
