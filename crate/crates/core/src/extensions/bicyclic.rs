use std::fmt;

use super::Extension;

/// An element `(a, b)` of the extended bicyclic semigroup `ℤ × ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BicyclicPair {
    pub a: i64,
    pub b: i64,
}

impl BicyclicPair {
    pub const fn new(a: i64, b: i64) -> Self {
        BicyclicPair { a, b }
    }

    pub fn mul(self, other: Self) -> Self {
        let BicyclicPair { a, b } = self;
        let BicyclicPair { a: c, b: d } = other;
        if b < c {
            BicyclicPair::new(a - b + c, d)
        } else if b == c {
            BicyclicPair::new(a, d)
        } else {
            BicyclicPair::new(a, d - c + b)
        }
    }
}

impl fmt::Display for BicyclicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The extended bicyclic semigroup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtBicyclic;

impl Extension for ExtBicyclic {
    type Elem = BicyclicPair;

    #[inline]
    fn mul(&self, x: BicyclicPair, y: BicyclicPair) -> BicyclicPair {
        x.mul(y)
    }

    fn indices(&self, x: BicyclicPair) -> (i64, i64) {
        (x.a, x.b)
    }

    fn middle_code(&self, _x: BicyclicPair) -> i64 {
        0
    }

    fn window(&self, lo: i64, hi: i64, _g_bound: i64) -> Vec<BicyclicPair> {
        (lo..=hi)
            .flat_map(|a| (lo..=hi).map(move |b| BicyclicPair::new(a, b)))
            .collect()
    }

    fn layer_unit(&self, i: i64, j: i64) -> BicyclicPair {
        BicyclicPair::new(i, j)
    }

    fn inverse(&self, x: BicyclicPair) -> Option<BicyclicPair> {
        Some(BicyclicPair::new(x.b, x.a))
    }

    fn closed_form_idempotents(&self, lo: i64, hi: i64, _g_bound: i64) -> Vec<BicyclicPair> {
        (lo..=hi).map(|n| BicyclicPair::new(n, n)).collect()
    }

    fn describe(&self) -> String {
        "ext-bicyclic".into()
    }

    fn show(&self, x: BicyclicPair) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> BicyclicPair {
        BicyclicPair::new(a, b)
    }

    #[test]
    fn three_cases() {
        assert_eq!(p(0, 0).mul(p(0, 0)), p(0, 0));
        assert_eq!(p(2, 3).mul(p(1, 4)), p(2, 6));
        assert_eq!(p(1, 4).mul(p(2, 3)), p(1, 5));
        assert_eq!(p(1, 2).mul(p(5, 0)), p(4, 0));
    }

    #[test]
    fn inverse_is_swap() {
        for x in ExtBicyclic.window(-2, 2, 0) {
            let y = ExtBicyclic.inverse(x).unwrap();
            assert_eq!(x.mul(y).mul(x), x);
            assert_eq!(y.mul(x).mul(y), y);
        }
    }
}
