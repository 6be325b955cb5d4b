//! Finite unions of integer intervals with possibly infinite ends. Every
//! descriptor normalizes to one of these, which makes subset, disjointness
//! and emptiness exact.

use std::fmt;

/// A closed interval `[lo, hi]`; `None` is `-∞` on the left and `+∞` on the
/// right. Never empty once inside a [`PointSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }

    fn contains(&self, k: i64) -> bool {
        self.lo.is_none_or(|a| a <= k) && self.hi.is_none_or(|b| k <= b)
    }
}

fn lo_key(lo: Option<i64>) -> (bool, i64) {
    (lo.is_some(), lo.unwrap_or(0))
}

/// Sorted, pairwise disjoint and non-adjacent intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PointSet(Vec<Interval>);

impl PointSet {
    pub fn empty() -> Self {
        PointSet(Vec::new())
    }

    pub fn full() -> Self {
        PointSet(vec![Interval { lo: None, hi: None }])
    }

    pub fn point(k: i64) -> Self {
        Self::range(k, k)
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        Self::from_intervals(vec![Interval { lo: Some(lo), hi: Some(hi) }])
    }

    /// `{k : k >= n}`.
    pub fn upper(n: i64) -> Self {
        PointSet(vec![Interval { lo: Some(n), hi: None }])
    }

    /// `{k : k <= n}`.
    pub fn lower(n: i64) -> Self {
        PointSet(vec![Interval { lo: None, hi: Some(n) }])
    }

    pub fn points(ks: impl IntoIterator<Item = i64>) -> Self {
        Self::from_intervals(ks.into_iter().map(|k| Interval { lo: Some(k), hi: Some(k) }).collect())
    }

    pub fn from_intervals(mut v: Vec<Interval>) -> Self {
        v.retain(|iv| !iv.is_empty());
        v.sort_by_key(|iv| lo_key(iv.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            if let Some(last) = out.last_mut() {
                let touches = match (last.hi, iv.lo) {
                    (None, _) | (_, None) => true,
                    (Some(h), Some(l)) => l <= h.saturating_add(1),
                };
                if touches {
                    last.hi = match (last.hi, iv.hi) {
                        (None, _) | (_, None) => None,
                        (Some(a), Some(b)) => Some(a.max(b)),
                    };
                    continue;
                }
            }
            out.push(iv);
        }
        PointSet(out)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|iv| iv.lo.is_some() && iv.hi.is_some())
    }

    pub fn contains(&self, k: i64) -> bool {
        self.0.iter().any(|iv| iv.contains(k))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                let lo = match (a.lo, b.lo) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(x.max(y)),
                };
                let hi = match (a.hi, b.hi) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(x.min(y)),
                };
                out.push(Interval { lo, hi });
            }
        }
        Self::from_intervals(out)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor: Option<i64> = None;
        let mut open_left = true;
        for iv in &self.0 {
            match iv.lo {
                None => {}
                Some(l) => out.push(Interval { lo: if open_left { None } else { cursor }, hi: Some(l - 1) }),
            }
            open_left = false;
            match iv.hi {
                None => return Self::from_intervals(out),
                Some(h) => cursor = Some(h + 1),
            }
        }
        out.push(Interval { lo: if open_left { None } else { cursor }, hi: None });
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersect(other).is_empty()
    }

    /// `{-k : k ∈ self}`.
    pub fn negate(&self) -> Self {
        Self::from_intervals(
            self.0.iter().map(|iv| Interval { lo: iv.hi.map(|h| -h), hi: iv.lo.map(|l| -l) }).collect(),
        )
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub fn sum(&self, other: &Self) -> Self {
        let add = |x: Option<i64>, y: Option<i64>| Some(x? + y?);
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                out.push(Interval { lo: add(a.lo, b.lo), hi: add(a.hi, b.hi) });
            }
        }
        Self::from_intervals(out)
    }

    /// `{max(a, b) : a ∈ self, b ∈ other}`.
    pub fn max_combine(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                let lo = match (a.lo, b.lo) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(x.max(y)),
                };
                let hi = match (a.hi, b.hi) {
                    (None, _) | (_, None) => None,
                    (Some(x), Some(y)) => Some(x.max(y)),
                };
                out.push(Interval { lo, hi });
            }
        }
        Self::from_intervals(out)
    }

    pub fn shift(&self, c: i64) -> Self {
        self.sum(&PointSet::point(c))
    }

    /// All members of a finite set, in increasing order.
    pub fn elements(&self) -> Option<Vec<i64>> {
        if !self.is_finite() {
            return None;
        }
        Some(self.0.iter().flat_map(|iv| iv.lo.unwrap()..=iv.hi.unwrap()).collect())
    }

    /// A member closest to zero (ties to the negative side), if any.
    pub fn pick(&self) -> Option<i64> {
        self.0
            .iter()
            .map(|iv| match (iv.lo, iv.hi) {
                (Some(l), _) if l > 0 => l,
                (_, Some(h)) if h < 0 => h,
                _ => 0,
            })
            .min_by_key(|&k| (k.unsigned_abs(), k))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|iv| match (iv.lo, iv.hi) {
                (Some(a), Some(b)) if a == b => format!("{a}"),
                (Some(a), Some(b)) => format!("[{a},{b}]"),
                (Some(a), None) => format!("[{a},∞)"),
                (None, Some(b)) => format!("(-∞,{b}]"),
                (None, None) => "ℤ".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join("∪"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(s: &PointSet) -> Vec<bool> {
        (-30..=30).map(|k| s.contains(k)).collect()
    }

    fn arb_set() -> impl Strategy<Value = PointSet> {
        let iv = (proptest::option::of(-12i64..12), proptest::option::of(-12i64..12))
            .prop_map(|(lo, hi)| Interval { lo, hi });
        proptest::collection::vec(iv, 0..4).prop_map(PointSet::from_intervals)
    }

    #[test]
    fn basics() {
        assert!(PointSet::upper(5).is_subset(&PointSet::upper(3)));
        assert!(!PointSet::upper(3).is_subset(&PointSet::upper(5)));
        let tst = PointSet::lower(-4).union(&PointSet::upper(4));
        assert!(tst.is_disjoint(&PointSet::points([0, 1, 2, 3, -3])));
        assert_eq!(PointSet::points([1, 2, 3, 5]).to_string(), "[1,3]∪5");
        assert_eq!(PointSet::upper(2).complement(), PointSet::lower(1));
        assert_eq!(PointSet::full().complement(), PointSet::empty());
        assert_eq!(PointSet::upper(2).sum(&PointSet::upper(3)), PointSet::upper(5));
        assert_eq!(PointSet::upper(2).pick(), Some(2));
        assert_eq!(PointSet::lower(-3).union(&PointSet::upper(3)).pick(), Some(-3));
    }

    proptest! {
        #[test]
        fn operations_match_pointwise(a in arb_set(), b in arb_set()) {
            let (ba, bb) = (brute(&a), brute(&b));
            let zip = |s: &PointSet, f: &dyn Fn(bool, bool) -> bool| {
                prop_assert_eq!(brute(s), ba.iter().zip(&bb).map(|(&x, &y)| f(x, y)).collect::<Vec<_>>());
                Ok(())
            };
            zip(&a.union(&b), &|x, y| x || y)?;
            zip(&a.intersect(&b), &|x, y| x && y)?;
            zip(&a.difference(&b), &|x, y| x && !y)?;
            prop_assert_eq!(a.is_subset(&b), (-60..=60).all(|k| !a.contains(k) || b.contains(k)));
            prop_assert_eq!(a.negate().contains(7), a.contains(-7));
        }

        #[test]
        fn sums_match_pointwise(a in arb_set(), b in arb_set(), k in -20i64..20) {
            let window = || -40i64..=40;
            let pairs = |f: &dyn Fn(i64, i64) -> bool| {
                window().any(|x| window().any(|y| a.contains(x) && b.contains(y) && f(x, y)))
            };
            let hit = pairs(&|x, y| x + y == k);
            let hit_max = pairs(&|x, y| x.max(y) == k);
            if hit {
                prop_assert!(a.sum(&b).contains(k));
            }
            if hit_max {
                prop_assert!(a.max_combine(&b).contains(k));
            }
            if a.is_finite() && b.is_finite() {
                prop_assert_eq!(a.sum(&b).contains(k), hit);
                prop_assert_eq!(a.max_combine(&b).contains(k), hit_max);
            }
        }
    }
}
