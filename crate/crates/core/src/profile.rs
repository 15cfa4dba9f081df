//! Per-type reference data: degrees, expected statistics and diagrams.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::invariants::{catalan_number, h_triangle, orbit_lengths, panyushev_orbits, rank_vector_from_degrees, HTriangle};
use crate::poset::GradedPoset;
use crate::qt::HilbertCandidate;
use crate::rootdata::{cartan_from_diagram, root_poset, CartanType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemProfile {
    pub name: String,
    pub rank: usize,
    /// Sorted descending.
    pub degrees: Vec<u32>,
    pub h: u32,
    /// Coxeter diagram edges `(i, j, m)`, 1-based, `m >= 3`.
    pub diagram: Vec<(usize, usize, u32)>,
    pub rank_vector: Vec<usize>,
    pub catalan: u128,
    pub h_triangle: Option<HTriangle>,
    /// Sorted orbit lengths.
    pub orbits: Option<Vec<usize>>,
    pub qt_catalan: Option<HilbertCandidate>,
}

#[derive(Deserialize)]
struct RawProfile {
    rank: usize,
    degrees: Vec<u32>,
    diagram: Vec<[u32; 3]>,
    h_triangle: Vec<Vec<u64>>,
    orbits: Vec<usize>,
    qt_catalan: Vec<[u32; 2]>,
}

impl RootSystemProfile {
    fn from_degrees(name: String, degrees: &[u32], diagram: Vec<(usize, usize, u32)>) -> Result<Self> {
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let h = *degrees.first().ok_or_else(|| Error::InvalidDegrees("empty degree list".into()))?;
        Ok(RootSystemProfile {
            name,
            rank: degrees.len(),
            rank_vector: rank_vector_from_degrees(&degrees)?,
            catalan: catalan_number(&degrees, h)?,
            degrees,
            h,
            diagram,
            h_triangle: None,
            orbits: None,
            qt_catalan: None,
        })
    }

    /// Look up `H3`, `H4`, `I2(m)` or a crystallographic type such as `B4`.
    pub fn by_name(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        if let Some(m) = parse_dihedral(trimmed) {
            return Self::dihedral(m);
        }
        let bundled = bundled_profiles()?;
        if let Some(p) = bundled.get(&trimmed.to_ascii_uppercase()) {
            return Ok(p.clone());
        }
        let t: CartanType = trimmed.parse().map_err(|_| Error::UnknownProfile(name.to_string()))?;
        Self::crystallographic(t)
    }

    pub fn h3() -> Self {
        Self::by_name("H3").expect("bundled profile")
    }

    pub fn h4() -> Self {
        Self::by_name("H4").expect("bundled profile")
    }

    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::UnknownProfile(format!("I2({m})")));
        }
        let mut p = Self::from_degrees(format!("I2({m})"), &[m, 2], vec![(1, 2, m)])?;
        p.h_triangle = Some(HTriangle::from_rows(&[vec![1, u64::from(m) - 2], vec![0, 2], vec![0, 0, 1]]));
        p.orbits = Some(vec![2, m as usize]);
        p.qt_catalan = Some(HilbertCandidate::new(&[(0, m + 1), (1, 1)]));
        Ok(p)
    }

    /// Profile whose H-triangle and orbit multiset are computed from the
    /// root poset generated from the Cartan matrix.
    pub fn crystallographic(t: CartanType) -> Result<Self> {
        let mut p = Self::from_degrees(t.to_string(), &t.degrees(), t.diagram())?;
        let poset = t.root_poset()?;
        p.h_triangle = Some(h_triangle(&poset, poset.minimals().mask()));
        p.orbits = Some(orbit_lengths(&panyushev_orbits(&poset)));
        Ok(p)
    }

    pub fn positive_roots(&self) -> usize {
        self.rank_vector.iter().sum()
    }

    pub fn restricted_homomesy_target(&self) -> Ratio<i64> {
        let (n, h) = (self.rank as i64, i64::from(self.h));
        Ratio::new(n * (h - 2), 2 * (h - 1))
    }

    /// Largest antichain size occurring in the H-triangle, if known.
    pub fn max_antichain(&self) -> Option<usize> {
        self.h_triangle.as_ref().map(|t| t.max_size())
    }

    /// Reference poset for each diagram node removed, in node order.
    pub fn parabolic_references(&self) -> Result<Vec<GradedPoset>> {
        (1..=self.rank).map(|j| diagram_poset(self.rank, &self.diagram, Some(j))).collect()
    }

    /// Consistency of the stored data.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDegrees(format!("{}: {msg}", self.name)));
        let roots: u32 = self.degrees.iter().map(|d| d - 1).sum();
        if self.positive_roots() != roots as usize {
            return bad("rank vector does not sum to the number of positive roots".into());
        }
        if let Some(t) = &self.h_triangle {
            if u128::from(t.total()) != self.catalan {
                return bad(format!("H-triangle total {} differs from {}", t.total(), self.catalan));
            }
        }
        if let Some(o) = &self.orbits {
            if o.iter().sum::<usize>() as u128 != self.catalan {
                return bad("orbit lengths do not sum to the Catalan number".into());
            }
        }
        if let Some(q) = &self.qt_catalan {
            let total: u64 = q.t1_coefficients().iter().sum();
            if u128::from(total) != self.catalan {
                return bad("q,t-Catalan polynomial has the wrong value at q = t = 1".into());
            }
        }
        Ok(())
    }
}

fn parse_dihedral(s: &str) -> Option<u32> {
    let rest = s.strip_prefix("I2").or_else(|| s.strip_prefix("i2"))?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).or_else(|| rest.strip_prefix('_'))?;
    inner.parse().ok()
}

fn bundled_profiles() -> Result<BTreeMap<String, RootSystemProfile>> {
    let raw: BTreeMap<String, RawProfile> =
        toml::from_str(fixtures::PROFILES_TOML).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    let mut out = BTreeMap::new();
    for (name, r) in raw {
        let diagram = r.diagram.iter().map(|e| (e[0] as usize, e[1] as usize, e[2])).collect();
        let mut p = RootSystemProfile::from_degrees(name.clone(), &r.degrees, diagram)?;
        if p.rank != r.rank {
            return Err(Error::InvalidDegrees(format!("{name}: rank {} but {} degrees", r.rank, p.rank)));
        }
        p.h_triangle = Some(HTriangle::from_rows(&r.h_triangle));
        let mut orbits = r.orbits;
        orbits.sort_unstable();
        p.orbits = Some(orbits);
        let pairs: Vec<(u32, u32)> = r.qt_catalan.iter().map(|s| (s[0], s[1])).collect();
        p.qt_catalan = Some(HilbertCandidate::new(&pairs));
        out.insert(name.to_ascii_uppercase(), p);
    }
    Ok(out)
}

/// Root poset of a diagram on nodes `1..=n`, optionally with one node
/// removed: the disjoint union of the posets of its components.
pub fn diagram_poset(n: usize, edges: &[(usize, usize, u32)], removed: Option<usize>) -> Result<GradedPoset> {
    let nodes: Vec<usize> = (1..=n).filter(|&v| Some(v) != removed).collect();
    let mut comp = vec![usize::MAX; n + 1];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &v in &nodes {
        if comp[v] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![v];
        let mut members = Vec::new();
        comp[v] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for &(a, b, _) in edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && Some(q) != removed && comp[q] == usize::MAX {
                        comp[q] = id;
                        stack.push(q);
                    }
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let mut result: Option<GradedPoset> = None;
    for members in components {
        let local: Vec<(usize, usize, u32)> = edges
            .iter()
            .filter(|(a, b, _)| members.contains(a) && members.contains(b))
            .map(|&(a, b, m)| {
                let ia = members.iter().position(|&x| x == a).unwrap();
                let ib = members.iter().position(|&x| x == b).unwrap();
                (ia, ib, m)
            })
            .collect();
        let part = component_poset(members.len(), &local)?;
        result = Some(match result {
            None => part,
            Some(acc) => acc.disjoint_union(&part)?,
        });
    }
    result.ok_or(Error::Capacity(0))
}

/// Connected diagram on nodes `0..k` with 0-based edges.
fn component_poset(k: usize, edges: &[(usize, usize, u32)]) -> Result<GradedPoset> {
    if k == 1 {
        return GradedPoset::antichain(1);
    }
    if k == 2 {
        return Ok(fixtures::dihedral_poset(edges[0].2 as usize));
    }
    if let Some(a) = cartan_from_diagram(k, edges) {
        return root_poset(&a);
    }
    // The only noncrystallographic component with a bundled poset is H3:
    // a path with label 5 on an end edge.
    if k == 3 && is_h3_path(edges) {
        return Ok(fixtures::h3_poset());
    }
    Err(Error::NoReference(format!("{k} nodes, edges {edges:?}")))
}

fn is_h3_path(edges: &[(usize, usize, u32)]) -> bool {
    let mut labels: Vec<u32> = edges.iter().map(|e| e.2).collect();
    labels.sort_unstable();
    labels == [3, 5]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_profiles_validate() {
        for name in ["H3", "H4", "I2(5)", "I2_7", "A3", "B4", "F4"] {
            let p = RootSystemProfile::by_name(name).unwrap();
            p.validate().unwrap();
        }
        assert!(RootSystemProfile::by_name("H5").is_err());
        assert!(RootSystemProfile::by_name("I2(2)").is_err());
    }

    #[test]
    fn h4_basics() {
        let p = RootSystemProfile::h4();
        assert_eq!(p.h, 30);
        assert_eq!(p.catalan, 280);
        assert_eq!(p.positive_roots(), 60);
        assert_eq!(p.restricted_homomesy_target(), Ratio::new(56, 29));
    }

    #[test]
    fn diagram_components() {
        // Removing an end node of the H4 diagram leaves H3 or A3.
        let h4 = RootSystemProfile::h4();
        let refs = h4.parabolic_references().unwrap();
        let sizes: Vec<usize> = refs.iter().map(|p| p.n()).collect();
        assert_eq!(sizes, vec![6, 4, 6, 15]);
        let no_ref = diagram_poset(4, &[(1, 2, 5), (2, 3, 3), (3, 4, 3)], None);
        assert!(matches!(no_ref, Err(Error::NoReference(_))));
    }
}
