use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `q` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(e: usize, c: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        Self::from_big(coeffs)
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_coeffs<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients as machine integers when all are nonnegative and small.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.to_u64()).collect()
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn div_rem(&self, d: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dd = d.degree()?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            if !(c % lead).is_zero() {
                return None;
            }
            let f = c / lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &f * dc;
            }
            quot[i] = f;
        }
        Some((UniPoly::from_big(quot), UniPoly::from_big(rem)))
    }

    /// Exact division; fails on a nonzero remainder.
    pub fn div_exact(&self, d: &UniPoly) -> Result<UniPoly> {
        match self.div_rem(d) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::InexactDivision),
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_big((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_big((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_big(out)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, mono: &str) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(mono)
    } else {
        write!(f, "{abs}{mono}")
    }
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, &power("q", e as u32))?;
            first = false;
        }
        Ok(())
    }
}

/// Sparse polynomial in `q` and `t` keyed by `(q exponent, t exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, BigInt::from(c));
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn swap_variables(&self) -> Self {
        BivariatePolynomial { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn eval(&self, q: i64, t: i64) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * BigInt::from(q).pow(i) * BigInt::from(t).pow(j))
            .sum()
    }

    pub fn eval_t1(&self) -> UniPoly {
        let mut out: Vec<BigInt> = Vec::new();
        for (&(i, _), c) in &self.terms {
            let i = i as usize;
            if out.len() <= i {
                out.resize(i + 1, BigInt::zero());
            }
            out[i] += c;
        }
        UniPoly::from_big(out)
    }

    /// `q^shift * p(q, 1/q)`.
    pub fn eval_t_qinv_shift(&self, shift: u32) -> Result<UniPoly> {
        let mut out: Vec<BigInt> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let e = i64::from(shift) + i64::from(i) - i64::from(j);
            if e < 0 {
                return Err(Error::NegativeExponent(e));
            }
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, BigInt::zero());
            }
            out[e] += c;
        }
        Ok(UniPoly::from_big(out))
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term(a + x, b + y, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        // Highest total degree first, then by decreasing q exponent.
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| std::cmp::Reverse((i + j, i)));
        for (k, &&(i, j)) in keys.iter().enumerate() {
            let mono = format!("{}{}", power("q", i), power("t", j));
            write_term(f, k == 0, &self.terms[&(i, j)], &mono)?;
        }
        Ok(())
    }
}

/// `[n]_{q,t} = q^{n-1} + q^{n-2} t + ... + t^{n-1}`.
pub fn qt_bracket(n: u32) -> Result<BivariatePolynomial> {
    if n == 0 {
        return Err(Error::EmptyBracket);
    }
    let mut p = BivariatePolynomial::zero();
    for k in 0..n {
        p.add_term(n - 1 - k, k, BigInt::one());
    }
    Ok(p)
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_bracket(n: u32) -> Result<UniPoly> {
    q_step_bracket(n, 1)
}

/// `[n]_{q^2} = 1 + q^2 + ... + q^{2(n-1)}`.
pub fn q2_bracket(n: u32) -> Result<UniPoly> {
    q_step_bracket(n, 2)
}

fn q_step_bracket(n: u32, step: usize) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::EmptyBracket);
    }
    let n = n as usize;
    let mut c = vec![0i64; step * (n - 1) + 1];
    for k in 0..n {
        c[step * k] = 1;
    }
    Ok(UniPoly::from_coeffs(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets() {
        assert_eq!(qt_bracket(1).unwrap(), BivariatePolynomial::monomial(0, 0, 1));
        assert_eq!(qt_bracket(3).unwrap().to_string(), "q^2 + qt + t^2");
        assert_eq!(qt_bracket(0), Err(Error::EmptyBracket));
        assert_eq!(q_bracket(3).unwrap().to_string(), "1 + q + q^2");
        assert_eq!(q2_bracket(2).unwrap().to_string(), "1 + q^2");
    }

    #[test]
    fn division() {
        let a = &q_bracket(6).unwrap() * &q_bracket(4).unwrap();
        assert_eq!(a.div_exact(&q_bracket(4).unwrap()).unwrap(), q_bracket(6).unwrap());
        assert_eq!(q_bracket(5).unwrap().div_exact(&q_bracket(2).unwrap()), Err(Error::InexactDivision));
    }

    #[test]
    fn specializations() {
        let p = &BivariatePolynomial::monomial(1, 1, 1) * &qt_bracket(49).unwrap();
        let u = p.eval_t_qinv_shift(60).unwrap();
        assert_eq!(u, q2_bracket(49).unwrap().shift(12));
        assert_eq!(BivariatePolynomial::monomial(0, 3, 1).eval_t_qinv_shift(2), Err(Error::NegativeExponent(-1)));
        assert_eq!(BivariatePolynomial::monomial(0, 0, 1).eval_t1(), UniPoly::one());
    }

    #[test]
    fn display_signs() {
        let p = &UniPoly::monomial(2, 3) - &UniPoly::one();
        assert_eq!(p.to_string(), "-1 + 3q^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
