//! Statistics on posets and the property checks built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::poset::{bit, Antichain, Bits, GradedPoset};
use crate::profile::RootSystemProfile;
use crate::qt::UniPoly;

/// `rank_i = #{ j : d_j > i }` for `i = 1 .. max(d) - 1`.
pub fn rank_vector_from_degrees(degrees: &[u32]) -> Result<Vec<usize>> {
    if degrees.is_empty() {
        return Err(Error::InvalidDegrees("empty degree list".into()));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDegrees(format!("degree {d} is below 2")));
    }
    let h = *degrees.iter().max().unwrap();
    Ok((1..h).map(|i| degrees.iter().filter(|&&d| d > i).count()).collect())
}

/// `prod (d_i + h) / d_i`, required to be an integer.
pub fn catalan_number(degrees: &[u32], h: u32) -> Result<u128> {
    if degrees.is_empty() {
        return Err(Error::InvalidDegrees("empty degree list".into()));
    }
    let num: u128 = degrees.iter().map(|&d| u128::from(d + h)).product();
    let den: u128 = degrees.iter().map(|&d| u128::from(d)).product();
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::NonIntegralCatalan(degrees.to_vec()));
    }
    Ok(num / den)
}

/// Antichain counts `n_{k,m}` by number `k` of simples and size `m`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct HTriangle {
    counts: BTreeMap<(usize, usize), u64>,
}

impl HTriangle {
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let mut t = HTriangle::default();
        for (k, row) in rows.iter().enumerate() {
            for (m, &c) in row.iter().enumerate() {
                if c != 0 {
                    t.counts.insert((k, m), c);
                }
            }
        }
        t
    }

    pub fn get(&self, k: usize, m: usize) -> u64 {
        self.counts.get(&(k, m)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, k: usize, m: usize, c: u64) {
        if c != 0 {
            *self.counts.entry((k, m)).or_default() += c;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts.iter().map(|(&km, &c)| (km, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of antichains of size `m`.
    pub fn column(&self, m: usize) -> u64 {
        self.counts.iter().filter(|((_, mm), _)| *mm == m).map(|(_, c)| c).sum()
    }

    pub fn max_size(&self) -> usize {
        self.counts.keys().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn max_k(&self) -> usize {
        self.counts.keys().map(|&(k, _)| k).max().unwrap_or(0)
    }
}

impl fmt::Display for HTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, u64)> = self.counts.iter().map(|(&(k, m), &c)| (k, m, c)).collect();
        terms.sort_by_key(|&(k, m, _)| (m, std::cmp::Reverse(k)));
        let mono = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        for (i, (k, m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let body = format!("{}{}", mono("s", k), mono("t", m));
            if body.is_empty() {
                write!(f, "{c}")?;
            } else if c == 1 {
                f.write_str(&body)?;
            } else {
                write!(f, "{c}{body}")?;
            }
        }
        Ok(())
    }
}

pub fn h_triangle(p: &GradedPoset, simples: u64) -> HTriangle {
    let mut t = HTriangle::default();
    p.for_each_antichain(|a| {
        t.add((a & simples).count_ones() as usize, a.count_ones() as usize, 1);
        true
    });
    t
}

#[inline]
pub(crate) fn pan_mask(p: &GradedPoset, a: u64) -> u64 {
    let ideal = p.down_closure(a);
    let mut out = 0;
    for x in Bits(p.all() & !ideal) {
        if p.lower_covers(x) & !ideal == 0 {
            out |= bit(x);
        }
    }
    out
}

/// Minimal elements outside the order ideal generated by `a`.
pub fn panyushev_step(p: &GradedPoset, a: Antichain) -> Antichain {
    Antichain(pan_mask(p, a.0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Smallest antichain mask in the orbit.
    pub start: u64,
    pub length: usize,
    /// Sum of antichain sizes over the orbit.
    pub size_sum: usize,
}

impl Orbit {
    pub fn average(&self) -> Ratio<i64> {
        Ratio::new(self.size_sum as i64, self.length as i64)
    }
}

/// Orbits of the Panyushev map, in order of their smallest antichain.
pub fn panyushev_orbits(p: &GradedPoset) -> Vec<Orbit> {
    let all: Vec<u64> = p.antichains().map(|a| a.0).collect();
    let mut seen = vec![false; all.len()];
    let mut out = Vec::new();
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let mut length = 0;
        let mut size_sum = 0;
        let mut a = all[i];
        loop {
            let j = all.binary_search(&a).expect("image is an antichain");
            if seen[j] {
                break;
            }
            seen[j] = true;
            length += 1;
            size_sum += a.count_ones() as usize;
            a = pan_mask(p, a);
        }
        out.push(Orbit { start: all[i], length, size_sum });
    }
    out
}

pub fn restricted_panyushev_orbits(p: &GradedPoset) -> Result<Vec<Orbit>> {
    Ok(panyushev_orbits(&p.delete_minimals()?))
}

pub fn orbit_lengths(orbits: &[Orbit]) -> Vec<usize> {
    let mut v: Vec<usize> = orbits.iter().map(|o| o.length).collect();
    v.sort_unstable();
    v
}

/// Number of order ideals of each size, as plain counts.
pub fn ideal_size_counts(p: &GradedPoset) -> Vec<u64> {
    let mut c = vec![0u64; p.n() + 1];
    p.for_each_antichain(|a| {
        c[p.down_closure(a).count_ones() as usize] += 1;
        true
    });
    c
}

pub fn ideal_size_genfun(p: &GradedPoset) -> UniPoly {
    UniPoly::from_coeffs(&ideal_size_counts(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Property {
    /// Simples, unique maximum, grading and parabolic subposets.
    Parabolic,
    RankVector,
    Catalan,
    HTriangle,
    /// Full multiset of Panyushev orbit lengths.
    OrbitMultiset,
    Homomesy,
    RestrictedHomomesy,
    IdealSizes,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Parabolic,
        Property::RankVector,
        Property::Catalan,
        Property::HTriangle,
        Property::OrbitMultiset,
        Property::Homomesy,
        Property::RestrictedHomomesy,
        Property::IdealSizes,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Property::Parabolic => "1",
            Property::RankVector => "2",
            Property::Catalan => "3",
            Property::HTriangle => "4",
            Property::OrbitMultiset => "5",
            Property::Homomesy => "5a",
            Property::RestrictedHomomesy => "5b",
            Property::IdealSizes => "6",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.token() == s.trim())
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Parse a selection such as `1-4,5a` or `all`. Ranges cover the integer
/// properties only.
pub fn parse_properties(s: &str) -> Result<Vec<Property>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "all" {
            out.extend(Property::ALL);
        } else if let Some((a, b)) = tok.split_once('-') {
            let bad = || Error::UnknownProperty(tok.to_string());
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || a > b || b > 6 {
                return Err(bad());
            }
            for i in a..=b {
                out.push(i.to_string().parse()?);
            }
        } else {
            out.push(tok.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownProperty(s.to_string()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn format_properties(props: &[Property]) -> String {
    props.iter().map(|p| p.token()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: Property,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub profile: String,
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, p: Property) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.property == p)
    }

    /// One JSON object per property.
    pub fn json_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let line = serde_json::json!({
                "profile": self.profile,
                "property": r.property.token(),
                "passed": r.passed,
                "witness": r.witness,
            });
            s.push_str(&line.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = if r.passed { "pass" } else { "FAIL" };
            writeln!(f, "property {:<2} {status}  {}", r.property.token(), r.witness)?;
        }
        Ok(())
    }
}

/// Property checks for one profile, with reference data prepared once.
#[derive(Clone, Debug)]
pub struct Checker {
    profile: RootSystemProfile,
    selection: Vec<Property>,
    parabolic_forms: Vec<CanonicalForm>,
    ideal_targets: Vec<Vec<u64>>,
}

impl Checker {
    pub fn new(profile: &RootSystemProfile, selection: &[Property]) -> Result<Self> {
        let mut selection = selection.to_vec();
        selection.sort();
        selection.dedup();
        let missing = |what| Error::MissingProfileData { profile: profile.name.clone(), what };
        let mut parabolic_forms = Vec::new();
        let mut ideal_targets = Vec::new();
        for &p in &selection {
            match p {
                Property::Parabolic => {
                    let mut forms: Vec<CanonicalForm> =
                        profile.parabolic_references()?.iter().map(canonical_form).collect();
                    forms.sort();
                    parabolic_forms = forms;
                }
                Property::HTriangle if profile.h_triangle.is_none() => return Err(missing("an H-triangle")),
                Property::OrbitMultiset if profile.orbits.is_none() => return Err(missing("an orbit multiset")),
                Property::IdealSizes => {
                    let qt = profile.qt_catalan.as_ref().ok_or_else(|| missing("a q,t-Catalan polynomial"))?;
                    ideal_targets = vec![qt.t1_coefficients()];
                }
                _ => {}
            }
        }
        Ok(Checker { profile: profile.clone(), selection, parabolic_forms, ideal_targets })
    }

    /// Replace the Property 6 target by a set of admissible ideal-size
    /// sequences.
    pub fn with_ideal_targets(mut self, targets: Vec<Vec<u64>>) -> Self {
        self.ideal_targets = targets;
        if !self.selection.contains(&Property::IdealSizes) {
            self.selection.push(Property::IdealSizes);
            self.selection.sort();
        }
        self
    }

    pub fn profile(&self) -> &RootSystemProfile {
        &self.profile
    }

    pub fn selection(&self) -> &[Property] {
        &self.selection
    }

    pub fn ideal_targets(&self) -> &[Vec<u64>] {
        &self.ideal_targets
    }

    pub fn check(&self, p: &GradedPoset) -> Report {
        let mut antichains: Option<Vec<u64>> = None;
        let mut orbits: Option<Vec<Orbit>> = None;
        let mut results = Vec::new();
        for &prop in &self.selection {
            let (passed, witness) = match prop {
                Property::Parabolic => self.check_parabolic(p),
                Property::RankVector => {
                    let rv = p.rank_vector();
                    (rv == self.profile.rank_vector, format!("rank vector {rv:?}"))
                }
                Property::Catalan => {
                    let c = antichains.get_or_insert_with(|| p.antichains().map(|a| a.0).collect()).len();
                    (c as u128 == self.profile.catalan, format!("{c} antichains, expected {}", self.profile.catalan))
                }
                Property::HTriangle => {
                    let t = h_triangle(p, p.minimals().0);
                    let want = self.profile.h_triangle.as_ref().expect("checked in new");
                    (&t == want, format!("H = {t}"))
                }
                Property::OrbitMultiset => {
                    let o = orbits.get_or_insert_with(|| panyushev_orbits(p));
                    let lens = orbit_lengths(o);
                    let want = self.profile.orbits.as_ref().expect("checked in new");
                    (&lens == want, format!("orbit lengths {}", format_multiset(&lens)))
                }
                Property::Homomesy => {
                    let o = orbits.get_or_insert_with(|| panyushev_orbits(p));
                    let target = Ratio::new(self.profile.rank as i64, 2);
                    homomesy_result(o, target)
                }
                Property::RestrictedHomomesy => match p.delete_minimals() {
                    Ok(q) => homomesy_result(&panyushev_orbits(&q), self.profile.restricted_homomesy_target()),
                    Err(_) => (false, "no non-minimal elements".to_string()),
                },
                Property::IdealSizes => {
                    let mut c = ideal_size_counts(p);
                    while c.last() == Some(&0) {
                        c.pop();
                    }
                    let ok = self.ideal_targets.iter().any(|t| t == &c);
                    (ok, format!("ideal sizes {}", UniPoly::from_coeffs(&c)))
                }
            };
            results.push(PropertyResult { property: prop, passed, witness });
        }
        Report { profile: self.profile.name.clone(), results }
    }

    fn check_parabolic(&self, p: &GradedPoset) -> (bool, String) {
        let n = self.profile.rank;
        let mins = p.minimals();
        if mins.len() != n {
            return (false, format!("{} minimal elements, expected {n}", mins.len()));
        }
        let maxs = p.maximals();
        if maxs.len() != 1 {
            return (false, format!("{} maximal elements", maxs.len()));
        }
        if !p.is_graded() {
            return (false, "not graded".to_string());
        }
        if n < 2 {
            return (true, "simples, unique maximum, graded".to_string());
        }
        let mut forms: Vec<CanonicalForm> = Vec::with_capacity(n);
        for s in mins.elements() {
            match p.parabolic_subposet(mins.mask() & !bit(s)) {
                Ok(sub) => forms.push(canonical_form(&sub)),
                Err(e) => return (false, e.to_string()),
            }
        }
        forms.sort();
        if forms == self.parabolic_forms {
            (true, "simples, unique maximum, graded, parabolics match".to_string())
        } else {
            let sizes: Vec<usize> = forms.iter().map(|f| f.n).collect();
            (false, format!("parabolic subposets of sizes {sizes:?} do not match the diagram"))
        }
    }
}

fn homomesy_result(orbits: &[Orbit], target: Ratio<i64>) -> (bool, String) {
    match orbits.iter().find(|o| o.average() != target) {
        None => (true, format!("all {} orbit averages equal {target}", orbits.len())),
        Some(o) => (false, format!("orbit of length {} has average {}, expected {target}", o.length, o.average())),
    }
}

/// `{2, 3, 5, 30^9}` style rendering.
pub fn format_multiset(v: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let j = (i..v.len()).find(|&j| v[j] != v[i]).unwrap_or(v.len());
        if j - i == 1 {
            parts.push(v[i].to_string());
        } else {
            parts.push(format!("{}^{}", v[i], j - i));
        }
        i = j;
    }
    format!("{{{}}}", parts.join(", "))
}

pub fn check_properties(p: &GradedPoset, profile: &RootSystemProfile, selection: &[Property]) -> Result<Report> {
    Ok(Checker::new(profile, selection)?.check(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(rank_vector_from_degrees(&[10, 6, 2]).unwrap(), vec![3, 2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(rank_vector_from_degrees(&[2]).unwrap(), vec![1]);
        assert!(rank_vector_from_degrees(&[]).is_err());
        assert_eq!(catalan_number(&[2, 6, 10], 10).unwrap(), 32);
        assert_eq!(catalan_number(&[2, 12, 20, 30], 30).unwrap(), 280);
        assert_eq!(catalan_number(&[2, 7], 7).unwrap(), 9);
        assert!(catalan_number(&[2, 3], 5).is_err());
    }

    #[test]
    fn property_tokens() {
        assert_eq!(
            parse_properties("1-4,5a").unwrap(),
            vec![Property::Parabolic, Property::RankVector, Property::Catalan, Property::HTriangle, Property::Homomesy]
        );
        assert_eq!(parse_properties("6,2,2").unwrap(), vec![Property::RankVector, Property::IdealSizes]);
        assert_eq!(parse_properties("all").unwrap().len(), 8);
        assert!(parse_properties("7").is_err());
        assert!(parse_properties("5c").is_err());
        assert!(parse_properties("").is_err());
    }

    #[test]
    fn single_element_statistics() {
        let p = GradedPoset::chain(1).unwrap();
        let t = h_triangle(&p, 1);
        assert_eq!(t.to_string(), "1 + st");
        assert_eq!(ideal_size_genfun(&p).to_string(), "1 + q");
    }

    #[test]
    fn multiset_format() {
        assert_eq!(format_multiset(&[2, 3, 5, 30, 30]), "{2, 3, 5, 30^2}");
        assert_eq!(format_multiset(&[]), "{}");
    }
}
