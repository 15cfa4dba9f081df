//! Exhaustive searches for graded posets with prescribed invariants.
//!
//! Both engines split their search tree into independent work units at a
//! fixed prefix depth. Units run on a thread pool and their results are
//! merged, deduplicated up to isomorphism and sorted by serialization, so the
//! output does not depend on the number of workers.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{Checker, Property};
use crate::iso::canonical_poset;
use crate::poset::{bit, Bits, GradedPoset};

pub mod config;
pub mod skeleton;
pub mod v1;
pub mod v2;

pub use config::{configurations, rank_configurations, symmetric_lower_representatives, RankConfiguration};
pub use skeleton::{h4_skeleton, PartialPoset};
pub use v1::{enumerate_upper_parts, search_v1, UpperPartRecord, V1Search};
pub use v2::{search_v2, V2Search};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    /// Number of decision levels expanded before the work is split.
    pub prefix_depth: usize,
    /// Disable to run the bare enumeration with only the final check.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, prefix_depth: 0, prune: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Search tree nodes visited.
    pub nodes: u64,
    /// Complete candidates handed to the final property check.
    pub leaves: u64,
    /// Candidates passing the final check, before deduplication.
    pub hits: u64,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.hits += o.hits;
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Canonical representatives, sorted by their text form.
    pub posets: Vec<GradedPoset>,
    pub units: usize,
    pub stats: SearchStats,
    pub seconds: f64,
}

/// A search tree that can be cut into independent units.
pub trait Engine: Sync {
    type Unit: Send + Sync;

    /// Units covering the whole search, expanded `depth` decision levels
    /// below the root and pruned where possible.
    fn split(&self, depth: usize, prune: bool) -> Vec<Self::Unit>;

    /// Every poset passing the final check below `unit`.
    fn run_unit(&self, unit: &Self::Unit, prune: bool, stats: &mut SearchStats) -> Vec<GradedPoset>;
}

pub fn run<E: Engine>(engine: &E, opts: &SearchOptions) -> Result<SearchOutcome> {
    let start = Instant::now();
    let units = engine.split(opts.prefix_depth, opts.prune);
    log::info!("{} work units", units.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidSearch(e.to_string()))?;
    let total = units.len();
    let parts: Vec<(Vec<GradedPoset>, SearchStats)> = pool.install(|| {
        units
            .par_iter()
            .enumerate()
            .map(|(i, u)| {
                let mut stats = SearchStats::default();
                let found = engine.run_unit(u, opts.prune, &mut stats);
                log::info!("unit {}/{total}: {} nodes, {} hits", i + 1, stats.nodes, stats.hits);
                (found, stats)
            })
            .collect()
    });
    let mut stats = SearchStats::default();
    let mut merged: BTreeMap<String, GradedPoset> = BTreeMap::new();
    for (found, s) in parts {
        stats.merge(&s);
        for p in found {
            let c = canonical_poset(&p);
            merged.entry(c.to_text()).or_insert(c);
        }
    }
    Ok(SearchOutcome {
        posets: merged.into_values().collect(),
        units: total,
        stats,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Orbit conditions usable on orbits known to survive in every completion.
#[derive(Clone, Debug, Default)]
pub(crate) struct OrbitRule {
    /// Allowed lengths with their multiplicities.
    lengths: Option<BTreeMap<usize, usize>>,
    average: Option<Ratio<i64>>,
}

impl OrbitRule {
    pub(crate) fn from_checker(checker: &Checker) -> Self {
        let profile = checker.profile();
        let sel = checker.selection();
        let mut rule = OrbitRule::default();
        if sel.contains(&Property::OrbitMultiset) {
            let mut counts = BTreeMap::new();
            for &l in profile.orbits.as_deref().unwrap_or_default() {
                *counts.entry(l).or_insert(0) += 1;
            }
            rule.lengths = Some(counts);
        }
        if sel.contains(&Property::Homomesy) {
            rule.average = Some(Ratio::new(profile.rank as i64, 2));
        }
        rule
    }

    pub(crate) fn is_active(&self) -> bool {
        self.lengths.is_some() || self.average.is_some()
    }

    /// Walk the Panyushev orbits of `p` given its sorted antichains and their
    /// order ideals. Orbits all of whose ideals satisfy `certified` must obey
    /// the rule; the others are ignored.
    pub(crate) fn admits(
        &self,
        p: &GradedPoset,
        antichains: &[u64],
        ideals: &[u64],
        certified: impl Fn(u64) -> bool,
    ) -> bool {
        let all = p.all();
        let mut seen = vec![false; antichains.len()];
        let mut found: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..antichains.len() {
            if seen[i] {
                continue;
            }
            let (mut j, mut length, mut size_sum, mut ok) = (i, 0usize, 0usize, true);
            while !seen[j] {
                seen[j] = true;
                length += 1;
                size_sum += antichains[j].count_ones() as usize;
                let ideal = ideals[j];
                ok &= certified(ideal);
                let mut next = 0;
                for x in Bits(all & !ideal) {
                    if p.lower_covers(x) & !ideal == 0 {
                        next |= bit(x);
                    }
                }
                j = antichains.binary_search(&next).expect("image is an antichain");
            }
            if !ok {
                continue;
            }
            if self.average.is_some_and(|t| Ratio::new(size_sum as i64, length as i64) != t) {
                return false;
            }
            if let Some(allowed) = &self.lengths {
                let c = found.entry(length).or_insert(0);
                *c += 1;
                if *c > allowed.get(&length).copied().unwrap_or(0) {
                    return false;
                }
            }
        }
        true
    }
}
