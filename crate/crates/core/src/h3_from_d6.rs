//! The H3 root poset as restricted roots of D6.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenVector, TAU};
use crate::poset::GradedPoset;

/// Simple roots of D6 in the basis v1..v6: v1-v2, ..., v5-v6, v5+v6.
pub const D6_SIMPLES: [[i32; 6]; 6] = [
    [1, -1, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0],
    [0, 0, 1, -1, 0, 0],
    [0, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 1, 1],
];

/// Order in which simple-root coordinates are reported by [`epsilon`]:
/// alpha1, alpha6, alpha2, alpha4, alpha5, alpha3. Consecutive entries are
/// the pairs folded together by [`gamma`].
pub const FOLDED_ORDER: [usize; 6] = [0, 5, 1, 3, 4, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct D6Root {
    pub v: [i32; 6],
    pub alpha: [i64; 6],
}

pub fn d6_positive_roots() -> Vec<D6Root> {
    let mut out = Vec::with_capacity(30);
    for i in 0..6 {
        for j in i + 1..6 {
            for sign in [-1, 1] {
                let mut v = [0i32; 6];
                v[i] = 1;
                v[j] = sign;
                let alpha = epsilon(v).expect("roots lie in the root lattice");
                out.push(D6Root { v, alpha });
            }
        }
    }
    out.sort();
    out
}

/// Inverse of the simple-root matrix, so that `a = v * inverse`.
fn simple_inverse() -> [[Ratio<i64>; 6]; 6] {
    let mut m: Vec<Vec<Ratio<i64>>> =
        D6_SIMPLES.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(i64::from(x))).collect()).collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..6)
        .map(|i| (0..6).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect())
        .collect();
    for col in 0..6 {
        let pivot = (col..6).find(|&r| !m[r][col].is_zero()).expect("simple roots are independent");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..6 {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..6 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..6 {
                    let (a, b) = (m[col][j], inv[col][j]);
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    let mut out = [[Ratio::zero(); 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = inv[i][j];
        }
    }
    out
}

/// Simple-root coordinates of `v`, listed in [`FOLDED_ORDER`].
pub fn epsilon(v: [i32; 6]) -> Result<[i64; 6]> {
    let inv = simple_inverse();
    let mut std = [0i64; 6];
    for (j, slot) in std.iter_mut().enumerate() {
        let c: Ratio<i64> = (0..6).map(|i| Ratio::from_integer(i64::from(v[i])) * inv[i][j]).sum();
        if !c.is_integer() {
            return Err(Error::NotInRootLattice(v.iter().map(|&x| i64::from(x)).collect()));
        }
        *slot = c.to_integer();
    }
    Ok(FOLDED_ORDER.map(|k| std[k]))
}

/// `(a1 + a2 tau, a3 + a4 tau, a5 + a6 tau)`.
pub fn gamma(a: [i64; 6]) -> GoldenVector {
    GoldenVector([GoldenInt::new(a[0], a[1]), GoldenInt::new(a[2], a[3]), GoldenInt::new(a[4], a[5])])
}

pub fn image(r: &D6Root) -> GoldenVector {
    gamma(r.alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPair {
    pub left: D6Root,
    pub right: D6Root,
    /// Lexicographically greater of the two in v-coordinates.
    pub chosen: Side,
}

impl TauPair {
    pub fn chosen_root(&self) -> &D6Root {
        match self.chosen {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn chosen_image(&self) -> GoldenVector {
        image(self.chosen_root())
    }
}

/// Pairs `(left, right)` of positive roots with `image(left) = tau * image(right)`,
/// sorted by `left`.
pub fn tau_pairs() -> Result<Vec<TauPair>> {
    let roots = d6_positive_roots();
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for (i, l) in roots.iter().enumerate() {
        let target = image(l);
        for (j, r) in roots.iter().enumerate() {
            if i != j && image(r).scale(TAU) == target {
                if used[i] || used[j] {
                    return Err(Error::Unpaired(l.v.to_vec()));
                }
                used[i] = true;
                used[j] = true;
                let chosen = if l.v > r.v { Side::Left } else { Side::Right };
                out.push(TauPair { left: *l, right: *r, chosen });
            }
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(Error::Unpaired(roots[k].v.to_vec()));
    }
    out.sort_by_key(|p| p.left.v);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct H3Construction {
    pub pairs: Vec<TauPair>,
    /// Element label (0-based) of each pair's chosen image in `poset`.
    pub labels: Vec<usize>,
    pub poset: GradedPoset,
}

impl H3Construction {
    pub fn trace(&self) -> String {
        let fmt_v = |v: &[i32; 6]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::from("# left | right | sigma | element | image\n");
        for (p, &label) in self.pairs.iter().zip(&self.labels) {
            let sigma = match p.chosen {
                Side::Left => "tau",
                Side::Right => "1",
            };
            let _ = writeln!(
                s,
                "({}) | ({}) | {} | {} | {}",
                fmt_v(&p.left.v),
                fmt_v(&p.right.v),
                sigma,
                label + 1,
                p.chosen_image()
            );
        }
        s
    }
}

/// Order the chosen images by `x <= y` iff every golden coordinate of
/// `y - x` lies in N + N tau.
pub fn build_h3_poset() -> Result<H3Construction> {
    let pairs = tau_pairs()?;
    let images: Vec<GoldenVector> = pairs.iter().map(TauPair::chosen_image).collect();
    let mut rel = Vec::new();
    for (i, &x) in images.iter().enumerate() {
        for (j, &y) in images.iter().enumerate() {
            if i != j && y.sub(x).is_natural() {
                rel.push((i, j));
            }
        }
    }
    let (poset, labels) = GradedPoset::build_with_map(images.len(), &rel)?;
    if !poset.is_graded() {
        return Err(Error::NotGraded);
    }
    Ok(H3Construction { pairs, labels, poset })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_coordinates() {
        for (i, s) in D6_SIMPLES.iter().enumerate() {
            let a = epsilon(*s).unwrap();
            let pos = FOLDED_ORDER.iter().position(|&k| k == i).unwrap();
            let mut e = [0i64; 6];
            e[pos] = 1;
            assert_eq!(a, e);
        }
        assert_eq!(epsilon([1, -1, 0, 0, 0, 0]).unwrap(), [1, 0, 0, 0, 0, 0]);
        assert!(epsilon([1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn gamma_pairs_coordinates() {
        assert_eq!(gamma([1, 0, 0, 0, 0, 0]), GoldenVector([GoldenInt::ONE, GoldenInt::ZERO, GoldenInt::ZERO]));
        assert_eq!(gamma([0, 1, 0, 0, 0, 0]), GoldenVector([TAU, GoldenInt::ZERO, GoldenInt::ZERO]));
    }

    #[test]
    fn thirty_positive_roots() {
        let roots = d6_positive_roots();
        assert_eq!(roots.len(), 30);
        assert!(roots.iter().all(|r| r.alpha.iter().all(|&c| c >= 0)));
    }
}
