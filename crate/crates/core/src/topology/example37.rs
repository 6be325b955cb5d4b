//! The nine case containments behind continuity of multiplication for the
//! topology on `B(ℤ,ℤ)` whose idempotent-layer points have neighbourhoods
//! `U^k_{i,j} = {(i,0,j)} ∪ {(i-1,h,j-1) : h >= k}`.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::symset::{Point, SymSet};
use super::{TopologyError, TopologyKind, TopologySpec};
use crate::carrier::IntCarrier;
use crate::extensions::ExtElement;
use crate::monoid::IntGroupEndo;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    /// Checks per case label, `a1` through `c3`.
    pub per_case: Vec<(&'static str, usize)>,
    pub failures: Vec<String>,
}

impl ContainmentReport {
    pub fn checked(&self) -> usize {
        self.per_case.iter().map(|(_, n)| n).sum()
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.per_case.iter().all(|&(_, n)| n > 0)
    }
}

struct Claim {
    case: &'static str,
    lhs: SymSet,
    rhs: SymSet,
    product: (Point, Point),
}

fn claims(
    t: &TopologySpec<IntCarrier>,
    (i, j, m, n): (i64, i64, i64, i64),
    tails: &RangeInclusive<i64>,
    groups: &[i64],
) -> Result<Vec<Claim>, TopologyError> {
    let c = t.carrier();
    let u = |a: i64, b: i64, k: i64| t.nbhd(ExtElement::new(a, 0, b), k);
    let pt = |a: i64, g: i64, b: i64| ExtElement::new(a, g, b);
    let mut out = Vec::new();
    for k in tails.clone() {
        for &g in groups {
            let x = pt(i, g, j);
            let y = pt(m, 0, n);
            let lhs = SymSet::point(x).product(&u(m, n, k)?, c)?;
            let (case, expect, rhs) = if j < m - 1 {
                ("a1", pt(i - j + m, 0, n), u(i - j + m, n, k)?)
            } else if j == m - 1 {
                ("a2", pt(i + 1, 0, n), u(i + 1, n, k + g)?)
            } else {
                ("a3", pt(i, g, n - m + j), SymSet::point(pt(i, g, n - m + j)))
            };
            out.push(Claim { case, lhs, rhs, product: (t.mul(x, y)?, expect) });

            let x = pt(i, 0, j);
            let y = pt(m, g, n);
            let lhs = u(i, j, k)?.product(&SymSet::point(y), c)?;
            let (case, expect, rhs) = if j <= m {
                ("b1", pt(i - j + m, g, n), SymSet::point(pt(i - j + m, g, n)))
            } else if j == m + 1 {
                ("b2", pt(i, 0, n + 1), u(i, n + 1, k + g)?)
            } else {
                ("b3", pt(i, 0, n - m + j), u(i, n - m + j, k)?)
            };
            out.push(Claim { case, lhs, rhs, product: (t.mul(x, y)?, expect) });
        }
        for l in tails.clone() {
            let x = pt(i, 0, j);
            let y = pt(m, 0, n);
            let lhs = u(i, j, k)?.product(&u(m, n, l)?, c)?;
            let (case, expect, rhs) = if j < m {
                ("c1", pt(i - j + m, 0, n), u(i - j + m, n, l)?)
            } else if j == m {
                ("c2", pt(i, 0, n), u(i, n, k + l)?)
            } else {
                ("c3", pt(i, 0, n - m + j), u(i, n - m + j, k)?)
            };
            out.push(Claim { case, lhs, rhs, product: (t.mul(x, y)?, expect) });
        }
    }
    Ok(out)
}

/// Every case containment, for indices `i, j, m, n` in `indices`, tail
/// parameters `k, l` in `tails`, and non-identity `g` in `groups`.
pub fn example_3_7_containments(
    indices: RangeInclusive<i64>,
    tails: RangeInclusive<i64>,
    groups: RangeInclusive<i64>,
) -> Result<ContainmentReport, TopologyError> {
    let t = TopologySpec::new(TopologyKind::Example3_7, IntCarrier::new(IntGroupEndo::Annihilating))?;
    let gs: Vec<i64> = groups.filter(|&g| g != 0).collect();
    let idx: Vec<i64> = indices.collect();
    let mut quads = Vec::new();
    for &i in &idx {
        for &j in &idx {
            for &m in &idx {
                for &n in &idx {
                    quads.push((i, j, m, n));
                }
            }
        }
    }
    let results: Vec<Result<Vec<(&'static str, Option<String>)>, TopologyError>> = quads
        .par_iter()
        .map(|&q| {
            Ok(claims(&t, q, &tails, &gs)?
                .into_iter()
                .map(|cl| {
                    let bad = if cl.product.0 != cl.product.1 {
                        Some(format!("{} at {:?}: product {} expected {}", cl.case, q, cl.product.0, cl.product.1))
                    } else if !cl.lhs.is_subset(&cl.rhs) {
                        Some(format!("{} at {:?}: {} ⊄ {}", cl.case, q, cl.lhs, cl.rhs))
                    } else {
                        None
                    };
                    (cl.case, bad)
                })
                .collect())
        })
        .collect();
    let labels = ["a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"];
    let mut counts = vec![0usize; labels.len()];
    let mut failures = Vec::new();
    for r in results {
        for (case, bad) in r? {
            counts[labels.iter().position(|&l| l == case).unwrap()] += 1;
            failures.extend(bad);
        }
    }
    Ok(ContainmentReport { per_case: labels.into_iter().zip(counts).collect(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_holds() {
        let r = example_3_7_containments(-1..=1, -2..=2, -1..=1).unwrap();
        assert!(r.holds(), "{:?}", r.failures.first());
    }
}
