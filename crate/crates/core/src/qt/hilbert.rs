use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{q2_bracket, q_bracket, qt_bracket, BivariatePolynomial, UniPoly};
use crate::error::{Error, Result};

/// One summand `q^shift t^shift [len]_{q,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub shift: u32,
    pub len: u32,
}

/// A sum of shifted brackets. Equal summands are listed separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertCandidate {
    pub summands: Vec<Summand>,
}

impl HilbertCandidate {
    pub fn new(pairs: &[(u32, u32)]) -> Self {
        HilbertCandidate { summands: pairs.iter().map(|&(shift, len)| Summand { shift, len }).collect() }
    }

    pub fn expand(&self) -> Result<BivariatePolynomial> {
        let mut out = BivariatePolynomial::zero();
        for s in &self.summands {
            let term = &BivariatePolynomial::monomial(s.shift, s.shift, 1) * &qt_bracket(s.len)?;
            out = &out + &term;
        }
        Ok(out)
    }

    /// `t = 1` specialization as plain coefficients.
    pub fn t1_coefficients(&self) -> Vec<u64> {
        let top = self.summands.iter().map(|s| (s.shift + s.len) as usize).max().unwrap_or(0);
        let mut c = vec![0u64; top];
        for s in &self.summands {
            for d in s.shift..s.shift + s.len {
                c[d as usize] += 1;
            }
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn eval_t1(&self) -> UniPoly {
        UniPoly::from_coeffs(&self.t1_coefficients())
    }

    /// Triples `(shift, len, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(u32, u32, u32)> {
        let mut sorted = self.summands.clone();
        sorted.sort();
        let mut out: Vec<(u32, u32, u32)> = Vec::new();
        for s in sorted {
            match out.last_mut() {
                Some(last) if last.0 == s.shift && last.1 == s.len => last.2 += 1,
                _ => out.push((s.shift, s.len, 1)),
            }
        }
        out
    }
}

impl fmt::Display for HilbertCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.summands.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let prefix = match s.shift {
                0 => String::new(),
                1 => "qt".to_string(),
                i => format!("q^{i}t^{i}"),
            };
            match (prefix.is_empty(), s.len) {
                (true, 1) => f.write_str("1")?,
                (false, 1) => f.write_str(&prefix)?,
                (_, n) => write!(f, "{prefix}[{n}]")?,
            }
        }
        Ok(())
    }
}

pub const H4_BRACKET_LENGTHS: [u32; 10] = [61, 49, 41, 37, 31, 25, 21, 13, 1, 1];

pub fn conjecture_h4() -> HilbertCandidate {
    HilbertCandidate::new(&[
        (0, 61),
        (1, 49),
        (1, 41),
        (2, 37),
        (1, 31),
        (3, 25),
        (2, 21),
        (4, 13),
        (6, 1),
        (10, 1),
    ])
}

pub fn conjecture_h4_polynomial() -> BivariatePolynomial {
    conjecture_h4().expand().expect("bracket lengths are positive")
}

/// `[32][42][50][60] / ([2][12][20][30])` in `q`.
pub fn h4_product_formula() -> Result<UniPoly> {
    let mut num = UniPoly::one();
    for n in [32, 42, 50, 60] {
        num = &num * &q_bracket(n)?;
    }
    let mut den = UniPoly::one();
    for n in [2, 12, 20, 30] {
        den = &den * &q_bracket(n)?;
    }
    num.div_exact(&den)
}

/// Greedy decomposition into summands `q^a [b]_{q^2}`: take the lowest
/// remaining exponent and the longest run of step 2 starting there.
pub fn decompose_q2_brackets(u: &UniPoly) -> Result<Vec<(u32, u32)>> {
    let fail = || Error::NoDecomposition(u.to_string());
    let mut rest: Vec<i64> = Vec::with_capacity(u.coeffs().len());
    for c in u.coeffs() {
        let c = i64::try_from(c).map_err(|_| fail())?;
        if c < 0 {
            return Err(fail());
        }
        rest.push(c);
    }
    let mut out: Vec<(u32, u32)> = Vec::new();
    while let Some(a) = rest.iter().position(|&c| c > 0) {
        let mut b = 0;
        while rest.get(a + 2 * b).is_some_and(|&c| c > 0) {
            rest[a + 2 * b] -= 1;
            b += 1;
        }
        out.push((a as u32, b as u32));
    }
    for w in out.windows(2) {
        let ((a, b), (c, d)) = (w[0], w[1]);
        if !(w[0] == w[1] || (a < c && b > d)) {
            return Err(fail());
        }
    }
    Ok(out)
}

pub fn expand_q2_brackets(parts: &[(u32, u32)]) -> Result<UniPoly> {
    let mut out = UniPoly::zero();
    for &(a, b) in parts {
        out = &out + &q2_bracket(b)?.shift(a as usize);
    }
    Ok(out)
}

/// Constraints on the `t = 1` specialization used to enumerate candidates.
#[derive(Clone, Debug)]
pub struct CandidateWindow {
    pub lengths: Vec<u32>,
    /// Exact coefficients of `q^0, q^1, ...`.
    pub low: Vec<u64>,
    /// Exact coefficients starting at `q^high_from`, up to the top degree.
    pub high_from: usize,
    pub high: Vec<u64>,
}

impl CandidateWindow {
    pub fn h4() -> Self {
        let mut high = vec![2u64];
        high.extend(std::iter::repeat_n(1, 11));
        CandidateWindow {
            lengths: H4_BRACKET_LENGTHS.to_vec(),
            low: vec![1, 4, 6, 7, 8, 8, 9, 8, 8, 8, 9],
            high_from: 49,
            high,
        }
    }

    fn top(&self) -> usize {
        self.high_from + self.high.len() - 1
    }

    fn target(&self, d: usize) -> Option<u64> {
        if d < self.low.len() {
            Some(self.low[d])
        } else if d >= self.high_from {
            self.high.get(d - self.high_from).copied()
        } else {
            None
        }
    }
}

pub fn enumerate_hilbert_candidates() -> Vec<HilbertCandidate> {
    enumerate_candidates(&CandidateWindow::h4())
}

/// All shift tuples for the window's bracket lengths whose `t = 1`
/// specialization matches the window, in lexicographic order of shifts.
pub fn enumerate_candidates(w: &CandidateWindow) -> Vec<HilbertCandidate> {
    let top = w.top();
    let watched: Vec<(usize, u64)> = (0..=top).filter_map(|d| w.target(d).map(|t| (d, t))).collect();
    let mut cover = vec![0u64; top + 1];
    let mut shifts = Vec::with_capacity(w.lengths.len());
    let mut out = Vec::new();
    rec(w, &watched, 0, &mut cover, &mut shifts, &mut out);
    out
}

fn rec(
    w: &CandidateWindow,
    watched: &[(usize, u64)],
    i: usize,
    cover: &mut [u64],
    shifts: &mut Vec<u32>,
    out: &mut Vec<HilbertCandidate>,
) {
    let k = w.lengths.len();
    if i == k {
        out.push(HilbertCandidate {
            summands: shifts.iter().zip(&w.lengths).map(|(&shift, &len)| Summand { shift, len }).collect(),
        });
        return;
    }
    let len = w.lengths[i] as usize;
    let top = cover.len() - 1;
    if len > top + 1 {
        return;
    }
    let lo = if i > 0 && w.lengths[i - 1] == w.lengths[i] { shifts[i - 1] as usize } else { 0 };
    let remaining = (k - i - 1) as u64;
    for s in lo..=top + 1 - len {
        for c in &mut cover[s..s + len] {
            *c += 1;
        }
        let ok = watched.iter().all(|&(d, t)| cover[d] <= t && cover[d] + remaining >= t);
        if ok {
            shifts.push(s as u32);
            rec(w, watched, i + 1, cover, shifts, out);
            shifts.pop();
        }
        for c in &mut cover[s..s + len] {
            *c -= 1;
        }
    }
}
