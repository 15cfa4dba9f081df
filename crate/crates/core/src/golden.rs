//! Exact arithmetic in Z[tau], tau = (1 + sqrt 5) / 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    /// Both integer coordinates nonnegative, i.e. an element of N + N tau.
    pub fn is_natural(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn to_f64(self) -> f64 {
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        self.a as f64 + self.b as f64 * tau
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;

    fn add(self, o: GoldenInt) -> GoldenInt {
        GoldenInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;

    fn sub(self, o: GoldenInt) -> GoldenInt {
        GoldenInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;

    fn neg(self) -> GoldenInt {
        GoldenInt::new(-self.a, -self.b)
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;

    // tau^2 = tau + 1
    fn mul(self, o: GoldenInt) -> GoldenInt {
        GoldenInt::new(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => f.write_str("t"),
            (0, b) => write!(f, "{b}t"),
            (a, 1) => write!(f, "{a}+t"),
            (a, b) if b < 0 => write!(f, "{a}{b}t"),
            (a, b) => write!(f, "{a}+{b}t"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GoldenVector(pub [GoldenInt; 3]);

impl GoldenVector {
    pub fn scale(self, c: GoldenInt) -> GoldenVector {
        GoldenVector(self.0.map(|x| x * c))
    }

    pub fn sub(self, o: GoldenVector) -> GoldenVector {
        GoldenVector([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn is_natural(self) -> bool {
        self.0.iter().all(|x| x.is_natural())
    }
}

impl fmt::Display for GoldenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tau_squared() {
        assert_eq!(TAU * TAU, TAU + GoldenInt::ONE);
        assert_eq!(GoldenInt::new(2, -1).to_string(), "2-1t");
    }

    proptest! {
        #[test]
        fn product_matches_floats(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = GoldenInt::new(a, b);
            let y = GoldenInt::new(c, d);
            let exact = (x * y).to_f64();
            let approx = x.to_f64() * y.to_f64();
            prop_assert!((exact - approx).abs() <= 1e-9 * (1.0 + approx.abs()));
        }

        #[test]
        fn ring_laws(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let x = GoldenInt::new(a, b);
            let y = GoldenInt::new(c, d);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * (y + TAU), x * y + x * TAU);
            prop_assert_eq!(x - x, GoldenInt::ZERO);
        }
    }
}
