//! Positive roots of crystallographic types generated from Cartan matrices.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::GradedPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    fn check(self) -> Result<Self> {
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::UnknownProfile(self.to_string()))
        }
    }

    pub fn degrees(self) -> Vec<u32> {
        let mut d: Vec<u32> = match self {
            CartanType::A(n) => (2..=n as u32 + 1).collect(),
            CartanType::B(n) | CartanType::C(n) => (1..=n as u32).map(|i| 2 * i).collect(),
            CartanType::D(n) => {
                let mut v: Vec<u32> = (1..n as u32).map(|i| 2 * i).collect();
                v.push(n as u32);
                v
            }
            CartanType::E(6) => vec![2, 5, 6, 8, 9, 12],
            CartanType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            CartanType::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            CartanType::F4 => vec![2, 6, 8, 12],
            CartanType::G2 => vec![2, 6],
        };
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Cartan matrix with `a[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut edges: Vec<(usize, usize, i32, i32)> = Vec::new();
        match self {
            CartanType::A(_) => edges.extend((1..n).map(|i| (i - 1, i, -1, -1))),
            CartanType::B(_) => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, -1, -1)));
                edges.push((n - 2, n - 1, -2, -1));
            }
            CartanType::C(_) => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, -1, -1)));
                edges.push((n - 2, n - 1, -1, -2));
            }
            CartanType::D(_) => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, -1, -1)));
                edges.push((n - 3, n - 1, -1, -1));
            }
            CartanType::E(_) => {
                edges.push((0, 2, -1, -1));
                edges.push((1, 3, -1, -1));
                edges.extend((3..n).map(|i| (i - 1, i, -1, -1)));
            }
            CartanType::F4 => {
                edges.push((0, 1, -1, -1));
                edges.push((1, 2, -2, -1));
                edges.push((2, 3, -1, -1));
            }
            CartanType::G2 => edges.push((0, 1, -1, -3)),
        }
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in edges {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        a
    }

    /// Coxeter diagram edges `(i, j, m)` with 1-based nodes and `m >= 3`.
    pub fn diagram(self) -> Vec<(usize, usize, u32)> {
        coxeter_diagram(&self.cartan_matrix())
    }

    pub fn positive_roots(self) -> Vec<Vec<i32>> {
        positive_roots(&self.cartan_matrix())
    }

    pub fn root_poset(self) -> Result<GradedPoset> {
        root_poset(&self.cartan_matrix())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => f.write_str("F4"),
            CartanType::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownProfile(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) => CartanType::A(n),
            ('B', n) => CartanType::B(n),
            ('C', n) => CartanType::C(n),
            ('D', n) => CartanType::D(n),
            ('E', n) => CartanType::E(n),
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        t.check()
    }
}

pub fn coxeter_diagram(a: &[Vec<i32>]) -> Vec<(usize, usize, u32)> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = match a[i][j] * a[j][i] {
                0 => continue,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => unreachable!("affine or invalid Cartan entry"),
            };
            out.push((i + 1, j + 1, m));
        }
    }
    out
}

/// Cartan matrix for a crystallographic diagram on nodes `0..n`; double bonds
/// get an arbitrary orientation.
pub fn cartan_from_diagram(n: usize, edges: &[(usize, usize, u32)]) -> Option<Vec<Vec<i32>>> {
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j, m) in edges {
        let (aij, aji) = match m {
            3 => (-1, -1),
            4 => (-2, -1),
            6 => (-3, -1),
            _ => return None,
        };
        a[i][j] = aij;
        a[j][i] = aji;
    }
    Some(a)
}

/// Positive roots as simple-root coefficient vectors, ordered by height with
/// the simple roots first.
pub fn positive_roots(a: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = a.len();
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: HashSet<Vec<i32>> = roots.iter().cloned().collect();
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        for i in 0..n {
            // alpha-string through beta: p steps down, q steps up.
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i32 = (0..n).map(|j| beta[j] * a[j][i]).sum();
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        idx += 1;
    }
    roots.sort_by_key(|r| r.iter().sum::<i32>());
    roots
}

/// Root poset: `beta <= beta'` iff `beta' - beta` is a nonnegative combination
/// of simple roots.
pub fn root_poset(a: &[Vec<i32>]) -> Result<GradedPoset> {
    let roots = positive_roots(a);
    let n = roots.len();
    if n > crate::poset::MAX_ELEMENTS {
        return Err(Error::Capacity(n));
    }
    let mut rel = Vec::new();
    for (x, r) in roots.iter().enumerate() {
        for (y, s) in roots.iter().enumerate() {
            if x != y && r.iter().zip(s).all(|(u, v)| u <= v) {
                rel.push((x, y));
            }
        }
    }
    GradedPoset::build(n, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let cases = [
            ("A3", 6),
            ("B4", 16),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (name, count) in cases {
            let t: CartanType = name.parse().unwrap();
            let roots = t.positive_roots();
            assert_eq!(roots.len(), count, "{name}");
            let sum: u32 = t.degrees().iter().map(|d| d - 1).sum();
            assert_eq!(sum as usize, count, "{name}");
        }
    }

    #[test]
    fn highest_roots() {
        let f4: CartanType = "F4".parse().unwrap();
        assert_eq!(f4.positive_roots().last().unwrap(), &vec![2, 3, 4, 2]);
        let g2: CartanType = "G2".parse().unwrap();
        assert_eq!(g2.positive_roots().last().unwrap(), &vec![3, 2]);
    }

    #[test]
    fn simples_come_first() {
        let p = CartanType::B(4).root_poset().unwrap();
        assert_eq!(p.minimals().mask(), 0b1111);
        assert_eq!(p.rank_vector(), vec![4, 3, 3, 2, 2, 1, 1]);
    }

    #[test]
    fn rejects_bad_names() {
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X".parse::<CartanType>().is_err());
    }

    #[test]
    fn diagrams() {
        assert_eq!(CartanType::F4.diagram(), vec![(1, 2, 3), (2, 3, 4), (3, 4, 3)]);
        assert_eq!(CartanType::D(4).diagram(), vec![(1, 2, 3), (2, 3, 3), (2, 4, 3)]);
    }
}
