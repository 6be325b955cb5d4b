use std::collections::BTreeMap;
use std::fmt;

use super::descriptor::SymbolicCarrier;
use super::pointset::PointSet;
use super::TopologyError;
use crate::extensions::ExtElement;

/// A point of `B(S,ℤ,θ)` with the middle given by its code.
pub type Point = ExtElement<i64>;

/// A finite union of layers `(i, A, j)`, one normalized set per index pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymSet {
    layers: BTreeMap<(i64, i64), PointSet>,
}

impl SymSet {
    pub fn empty() -> Self {
        SymSet::default()
    }

    pub fn point(x: Point) -> Self {
        SymSet::layer(x.i, PointSet::point(x.s), x.j)
    }

    pub fn layer(i: i64, set: PointSet, j: i64) -> Self {
        let mut out = SymSet::empty();
        out.insert(i, set, j);
        out
    }

    pub fn insert(&mut self, i: i64, set: PointSet, j: i64) {
        if set.is_empty() {
            return;
        }
        let slot = self.layers.entry((i, j)).or_default();
        *slot = slot.union(&set);
    }

    pub fn layers(&self) -> impl Iterator<Item = (i64, i64, &PointSet)> {
        self.layers.iter().map(|(&(i, j), s)| (i, j, s))
    }

    pub fn at(&self, i: i64, j: i64) -> PointSet {
        self.layers.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn contains(&self, x: Point) -> bool {
        self.layers.get(&(x.i, x.j)).is_some_and(|s| s.contains(x.s))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, s) in other.layers() {
            out.insert(i, s.clone(), j);
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = SymSet::empty();
        for (i, j, s) in self.layers() {
            out.insert(i, s.intersect(&other.at(i, j)), j);
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = SymSet::empty();
        for (i, j, s) in self.layers() {
            out.insert(i, s.difference(&other.at(i, j)), j);
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.layers().all(|(i, j, s)| s.is_subset(&other.at(i, j)))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersect(other).is_empty()
    }

    /// Some member, preferring layers near the origin.
    pub fn pick(&self) -> Option<Point> {
        self.layers()
            .filter_map(|(i, j, s)| s.pick().map(|k| ExtElement::new(i, k, j)))
            .min_by_key(|p| (p.i.unsigned_abs() + p.j.unsigned_abs(), p.i, p.j, p.s.unsigned_abs()))
    }

    /// `{x·y : x ∈ self, y ∈ other}` under the Bruck-Reilly product.
    pub fn product<C: SymbolicCarrier>(&self, other: &Self, c: &C) -> Result<Self, TopologyError> {
        let mut out = SymSet::empty();
        for (i, j, a) in self.layers() {
            for (m, n, b) in other.layers() {
                if j < m {
                    let ta = c.set_theta_pow((m - j) as u64, a)?;
                    out.insert(i - j + m, c.set_mul(&ta, b)?, n);
                } else if j == m {
                    out.insert(i, c.set_mul(a, b)?, n);
                } else {
                    let tb = c.set_theta_pow((j - m) as u64, b)?;
                    out.insert(i, c.set_mul(a, &tb)?, n - m + j);
                }
            }
        }
        Ok(out)
    }

    /// `{x⁻¹ : x ∈ self}` with `(i, s, j)⁻¹ = (j, s⁻¹, i)`.
    pub fn inverse<C: SymbolicCarrier>(&self, c: &C) -> Result<Self, TopologyError> {
        let mut out = SymSet::empty();
        for (i, j, a) in self.layers() {
            out.insert(j, c.set_inverse(a)?, i);
        }
        Ok(out)
    }
}

impl fmt::Display for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.layers().map(|(i, j, s)| format!("({i},{s},{j})")).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
