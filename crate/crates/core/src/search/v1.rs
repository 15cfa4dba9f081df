//! Cover-by-cover search on the H4 skeleton. The part above rank 12 is
//! enumerated once; the part up to rank 12 is searched depth first and
//! joined with every compatible upper part.

use crate::error::{Error, Result};
use crate::invariants::{Checker, Property};
use crate::poset::{bit, full_mask, Bits, GradedPoset};
use crate::profile::RootSystemProfile;

use super::skeleton::PartialPoset;
use super::{run, Engine, OrbitRule, SearchOptions, SearchOutcome, SearchStats};

/// Elements `1..=36` (ranks 1 to 12) form the lower part.
const LOWER: usize = 36;
/// 0-based index of element 35, the first element of the upper part.
const UPPER_START: usize = 34;
const SIMPLES: u64 = 0b1111;
const RANK12: u64 = (1 << 34) | (1 << 35);

#[derive(Clone, Debug)]
pub struct UpperPartRecord {
    /// Bit `i` set iff the `i`-th open upper cover is present.
    pub assignment: u32,
    /// The poset on elements `35..=60`, relabeled `0..26`.
    pub upper_poset: GradedPoset,
    /// Two-element antichains among elements `37..=60`.
    pub a2: u64,
    /// Elements of `37..=60` not above 35, respectively 36.
    pub g35: u64,
    pub g36: u64,
    /// Passes the orbit conditions certified inside the upper part.
    pub kept: bool,
    /// Lower cover masks of elements `37..=60`, global labels.
    lower: Vec<u64>,
}

impl UpperPartRecord {
    fn new(assignment: u32, lower: Vec<u64>, rule: &OrbitRule) -> Self {
        // Local labels: element 35 + i becomes i.
        let mut local = vec![0u64; 2];
        local.extend(lower.iter().map(|&m| m >> UPPER_START));
        let upper_poset = GradedPoset::from_lower_covers(&local);
        let mut a2 = 0;
        let mut antichains = Vec::new();
        upper_poset.for_each_antichain(|a| {
            if a.count_ones() == 2 && a & 0b11 == 0 {
                a2 += 1;
            }
            antichains.push(a);
            true
        });
        let rest = upper_poset.all() & !0b11;
        let g35 = Bits(rest).filter(|&x| upper_poset.below(x) & 1 == 0).count() as u64;
        let g36 = Bits(rest).filter(|&x| upper_poset.below(x) & 2 == 0).count() as u64;
        // Below an ideal containing 35 and 36 sits the whole lower part, so
        // such orbits are orbits of the full poset.
        let kept = !rule.is_active() || {
            let ideals: Vec<u64> = antichains.iter().map(|&a| upper_poset.down_closure(a)).collect();
            rule.admits(&upper_poset, &antichains, &ideals, |i| i & 0b11 == 0b11)
        };
        UpperPartRecord { assignment, upper_poset, a2, g35, g36, kept, lower }
    }
}

/// All completions of the open covers among elements `35..=60`, with their
/// join statistics. `kept` records whether the orbit conditions selected in
/// `checker` hold on the orbits certified inside the upper part.
pub fn enumerate_upper_parts(skeleton: &PartialPoset, checker: &Checker) -> Vec<UpperPartRecord> {
    let rule = OrbitRule::from_checker(checker);
    let vars: Vec<(usize, usize)> = skeleton.undecided.iter().copied().filter(|&(a, _)| a >= UPPER_START).collect();
    let base = skeleton.lower_masks(&[]);
    (0..1u32 << vars.len())
        .map(|assignment| {
            let mut lower = base[LOWER..].to_vec();
            for (i, &(a, b)) in vars.iter().enumerate() {
                if assignment & (1 << i) != 0 {
                    lower[b - LOWER] |= bit(a);
                }
            }
            UpperPartRecord::new(assignment, lower, &rule)
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum GroupCheck {
    /// Ranks 11 and 12: every element of either rank takes part in a cover.
    Rank12,
    /// Ranks 9 and 10: 29 and 31 each cover 27 or 28, and no 4-antichain
    /// in `26..=31`.
    Rank10,
    /// Ranks 5 and 6: `{14, 15, 18, 19}` is not an antichain.
    Rank6,
}

impl GroupCheck {
    fn upper_rank(self) -> u32 {
        match self {
            GroupCheck::Rank12 => 12,
            GroupCheck::Rank10 => 10,
            GroupCheck::Rank6 => 6,
        }
    }

    fn holds(self, m: &[u64]) -> bool {
        match self {
            GroupCheck::Rank12 => {
                let r11 = 0b111 << 31;
                m[34] & r11 != 0 && m[35] & r11 != 0 && (m[34] | m[35]) & r11 == r11
            }
            GroupCheck::Rank10 => {
                let pair = bit(26) | bit(27);
                m[28] & pair != 0 && m[30] & pair != 0 && !has_antichain(m, &[25, 26, 27, 28, 29, 30], 4)
            }
            GroupCheck::Rank6 => has_comparable(m, &[13, 14, 17, 18]),
        }
    }
}

/// Comparability inside two consecutive ranks is a cover.
fn related(m: &[u64], x: usize, y: usize) -> bool {
    m[y] & bit(x) != 0 || m[x] & bit(y) != 0
}

fn has_comparable(m: &[u64], set: &[usize]) -> bool {
    set.iter().enumerate().any(|(i, &x)| set[i + 1..].iter().any(|&y| related(m, x, y)))
}

fn has_antichain(m: &[u64], set: &[usize], size: usize) -> bool {
    (0u32..1 << set.len()).filter(|s| s.count_ones() as usize == size).any(|s| {
        let pick: Vec<usize> = Bits(u64::from(s)).map(|i| set[i]).collect();
        !has_comparable(m, &pick)
    })
}

pub struct V1Search {
    checker: Checker,
    base: Vec<u64>,
    vars: Vec<(usize, usize)>,
    /// `checks[p]` runs once the first `p` variables are decided.
    checks: Vec<Vec<GroupCheck>>,
    records: Vec<UpperPartRecord>,
    rule: OrbitRule,
    /// Column 3 of the H-triangle.
    antichain3_bound: u64,
    /// Two-element antichains free of simples.
    join_target: u64,
}

impl V1Search {
    /// Search completions of `skeleton` passing `filters`, which must include
    /// Properties 1 to 4.
    pub fn new(profile: &RootSystemProfile, filters: &[Property], skeleton: &PartialPoset) -> Result<Self> {
        let needed = [Property::Parabolic, Property::RankVector, Property::Catalan, Property::HTriangle];
        if let Some(p) = needed.iter().find(|p| !filters.contains(p)) {
            return Err(Error::InvalidSearch(format!("the skeleton search requires property {p}")));
        }
        if profile.rank_vector != RootSystemProfile::h4().rank_vector || skeleton.n() != 60 {
            return Err(Error::InvalidSearch(format!("the skeleton search is specific to H4, not {}", profile.name)));
        }
        let checker = Checker::new(profile, filters)?;
        let t = profile.h_triangle.as_ref().expect("H4 profile has an H-triangle");
        let vars: Vec<(usize, usize)> = skeleton.undecided.iter().copied().filter(|&(_, b)| b < LOWER).collect();
        let rank = &skeleton.rank;
        let mut checks = vec![Vec::new(); vars.len() + 1];
        for g in [GroupCheck::Rank12, GroupCheck::Rank10, GroupCheck::Rank6] {
            let at = vars.iter().filter(|&&(_, b)| rank[b] >= g.upper_rank()).count();
            checks[at].push(g);
        }
        let records = enumerate_upper_parts(skeleton, &checker);
        Ok(V1Search {
            rule: OrbitRule::from_checker(&checker),
            checker,
            base: skeleton.lower_masks(&[]),
            vars,
            checks,
            records,
            antichain3_bound: t.column(3),
            join_target: t.get(0, 2),
        })
    }

    pub fn h4(filters: &[Property]) -> Result<Self> {
        Self::new(&RootSystemProfile::h4(), filters, &super::skeleton::h4_skeleton())
    }

    pub fn lower_variables(&self) -> &[(usize, usize)] {
        &self.vars
    }

    pub fn records(&self) -> &[UpperPartRecord] {
        &self.records
    }

    pub fn run(&self, opts: &SearchOptions) -> Result<SearchOutcome> {
        run(self, opts)
    }

    fn checks_pass(&self, p: usize, m: &[u64]) -> bool {
        self.checks[p].iter().all(|g| g.holds(m))
    }

    fn descend(&self, p: usize, m: &mut Vec<u64>, prune: bool, stats: &mut SearchStats, out: &mut Vec<GradedPoset>) {
        stats.nodes += 1;
        if prune && !self.checks_pass(p, m) {
            return;
        }
        if p == self.vars.len() {
            self.leaf(m, prune, stats, out);
            return;
        }
        let (a, b) = self.vars[p];
        self.descend(p + 1, m, prune, stats, out);
        m[b] |= bit(a);
        self.descend(p + 1, m, prune, stats, out);
        m[b] &= !bit(a);
    }

    fn leaf(&self, m: &[u64], prune: bool, stats: &mut SearchStats, out: &mut Vec<GradedPoset>) {
        let frag = GradedPoset::from_lower_covers(&m[..LOWER]);
        let mut b2 = 0u64;
        let mut size3 = 0u64;
        let mut antichains = Vec::new();
        let ok = frag.for_each_antichain(|a| {
            match a.count_ones() {
                2 if a & SIMPLES == 0 => b2 += 1,
                3 => size3 += 1,
                _ => {}
            }
            if self.rule.is_active() {
                antichains.push(a);
            }
            !prune || size3 <= self.antichain3_bound
        });
        if prune {
            if !ok {
                return;
            }
            if self.rule.is_active() {
                let ideals: Vec<u64> = antichains.iter().map(|&a| frag.down_closure(a)).collect();
                if !self.rule.admits(&frag, &antichains, &ideals, |i| i & RANK12 == 0) {
                    return;
                }
            }
        }
        let middle = full_mask(LOWER) & !SIMPLES;
        let not_below = |top: usize| Bits(middle).filter(|&x| x != top && frag.below(top) & bit(x) == 0).count() as u64;
        let (l35, l36) = (not_below(34), not_below(35));
        let mut full = m[..LOWER].to_vec();
        for r in &self.records {
            if prune && (!r.kept || r.a2 + b2 + l35 * r.g36 + l36 * r.g35 != self.join_target) {
                continue;
            }
            full.truncate(LOWER);
            full.extend_from_slice(&r.lower);
            stats.leaves += 1;
            let p = GradedPoset::from_lower_covers(&full);
            if self.checker.check(&p).passed() {
                stats.hits += 1;
                out.push(p);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct V1Unit {
    pub decided: usize,
    pub masks: Vec<u64>,
}

impl Engine for V1Search {
    type Unit = V1Unit;

    fn split(&self, depth: usize, prune: bool) -> Vec<V1Unit> {
        let depth = depth.min(self.vars.len());
        let mut frontier = vec![self.base.clone()];
        for p in 0..depth {
            let (a, b) = self.vars[p];
            let mut next = Vec::new();
            for m in frontier {
                if prune && !self.checks_pass(p, &m) {
                    continue;
                }
                let mut with = m.clone();
                with[b] |= bit(a);
                next.push(m);
                next.push(with);
            }
            frontier = next;
        }
        frontier
            .into_iter()
            .filter(|m| !prune || self.checks_pass(depth, m))
            .map(|masks| V1Unit { decided: depth, masks })
            .collect()
    }

    fn run_unit(&self, unit: &V1Unit, prune: bool, stats: &mut SearchStats) -> Vec<GradedPoset> {
        let mut out = Vec::new();
        let mut m = unit.masks.clone();
        self.descend(unit.decided, &mut m, prune, stats, &mut out);
        out
    }
}

/// Skeleton search for H4.
pub fn search_v1(
    profile: &RootSystemProfile,
    skeleton: &PartialPoset,
    filters: &[Property],
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    V1Search::new(profile, filters, skeleton)?.run(opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::parse_properties;
    use crate::search::skeleton::h4_skeleton;

    #[test]
    fn twenty_five_top_units() {
        let s = V1Search::h4(&parse_properties("1-5").unwrap()).unwrap();
        assert_eq!(s.split(6, true).len(), 25);
        assert_eq!(s.split(6, false).len(), 64);
        assert_eq!(s.split(0, true).len(), 1);
    }

    #[test]
    fn requires_properties_one_to_four() {
        let err = V1Search::h4(&parse_properties("1,2,3").unwrap());
        assert!(matches!(err, Err(Error::InvalidSearch(_))));
        let h3 = RootSystemProfile::h3();
        assert!(V1Search::new(&h3, &parse_properties("1-4").unwrap(), &h4_skeleton()).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        // Two-element antichains free of simples, counted on the joined
        // poset, against the split into lower part, upper part and cross
        // terms.
        #[test]
        fn join_identity(
            picks in proptest::collection::vec(proptest::bool::weighted(0.7), 37),
            record in 0usize..1 << 14,
        ) {
            let s = V1Search::h4(&parse_properties("1-4").unwrap()).unwrap();
            let mut m = s.base.clone();
            for (&(a, b), &on) in s.vars.iter().zip(&picks) {
                if on {
                    m[b] |= bit(a);
                }
            }
            let r = &s.records[record];
            let frag = GradedPoset::from_lower_covers(&m[..LOWER]);
            let middle = full_mask(LOWER) & !SIMPLES;
            proptest::prop_assume!(Bits(middle).all(|x| (frag.above(x) | bit(x)) & RANK12 != 0));
            m.truncate(LOWER);
            m.extend_from_slice(&r.lower);
            let full = GradedPoset::from_lower_covers(&m);
            let direct = full.antichains().filter(|a| a.len() == 2 && a.mask() & SIMPLES == 0).count() as u64;
            let b2 = frag.antichains().filter(|a| a.len() == 2 && a.mask() & SIMPLES == 0).count() as u64;
            let not_below = |top: usize| Bits(middle).filter(|&x| x != top && frag.below(top) & bit(x) == 0).count() as u64;
            proptest::prop_assert_eq!(direct, r.a2 + b2 + not_below(34) * r.g36 + not_below(35) * r.g35);
        }
    }

    #[test]
    fn record_statistics() {
        let s = V1Search::h4(&parse_properties("1-4").unwrap()).unwrap();
        assert_eq!(s.records().len(), 1 << 14);
        let r = &s.records()[0];
        let upper = r.upper_poset.induced(r.upper_poset.all() & !0b11);
        let pairs = upper.antichains().filter(|a| a.len() == 2).count() as u64;
        assert_eq!(pairs, r.a2);
    }
}
