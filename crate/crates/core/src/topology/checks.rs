use std::collections::HashMap;

use rayon::prelude::*;

use super::symset::{Point, SymSet};
use super::{TopologyCarrier, TopologyError, TopologyKind, TopologySpec};

fn key(x: Point) -> (u64, i64, i64, i64) {
    (x.i.unsigned_abs() + x.j.unsigned_abs(), x.i, x.j, x.s)
}

enum Verdict {
    Holds(String),
    Fails(String),
    Undecidable(String),
}

impl From<Result<Verdict, TopologyError>> for Verdict {
    fn from(r: Result<Verdict, TopologyError>) -> Self {
        r.unwrap_or_else(|e| Verdict::Undecidable(e.to_string()))
    }
}

/// Aggregate of a check over many points or pairs. Failures are
/// schedule-relative: no candidate within the schedule worked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyReport {
    pub checked: usize,
    pub failures: usize,
    pub undecidable: usize,
    /// The failure at the smallest point (pair) in `(|i|+|j|, i, j, s)` order.
    pub first_failure: Option<String>,
    pub first_undecidable: Option<String>,
    pub witness: Option<String>,
    pub schedule: String,
}

impl TopologyReport {
    fn collect<K: Ord>(mut items: Vec<(K, Verdict)>, schedule: String) -> Self {
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut r = TopologyReport {
            checked: items.len(),
            failures: 0,
            undecidable: 0,
            first_failure: None,
            first_undecidable: None,
            witness: None,
            schedule,
        };
        for (_, v) in items {
            match v {
                Verdict::Holds(w) => {
                    r.witness.get_or_insert(w);
                }
                Verdict::Fails(w) => {
                    r.failures += 1;
                    r.first_failure.get_or_insert(w);
                }
                Verdict::Undecidable(w) => {
                    r.undecidable += 1;
                    r.first_undecidable.get_or_insert(w);
                }
            }
        }
        r
    }

    pub fn holds(&self) -> bool {
        self.failures == 0 && self.undecidable == 0
    }
}

/// Whether the base at `x` shrinks along `params`.
fn nested<C: TopologyCarrier>(t: &TopologySpec<C>, x: Point, params: &[i64]) -> Result<bool, TopologyError> {
    let mut prev: Option<SymSet> = None;
    for &p in params {
        let n = t.nbhd(x, p)?;
        if let Some(q) = &prev {
            if !n.is_subset(q) {
                return Ok(false);
            }
        }
        prev = Some(n);
    }
    Ok(true)
}

/// The candidates to try for a monotone property: for a nested family only
/// the smallest base element matters.
fn candidates<C: TopologyCarrier>(t: &TopologySpec<C>, x: Point, params: &[i64]) -> Result<Vec<i64>, TopologyError> {
    Ok(if nested(t, x, params)? { params.last().copied().into_iter().collect() } else { params.to_vec() })
}

type Candidates = HashMap<Point, Result<Vec<i64>, TopologyError>>;

fn candidate_map<C: TopologyCarrier>(t: &TopologySpec<C>, points: &[Point], params: &[i64]) -> Candidates {
    points.par_iter().map(|&x| (x, candidates(t, x, params))).collect()
}

fn lookup<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    cands: &Candidates,
    x: Point,
    params: &[i64],
) -> Result<Vec<i64>, TopologyError> {
    match cands.get(&x) {
        Some(r) => r.clone(),
        None => candidates(t, x, params),
    }
}

fn hausdorff_pair<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    x: Point,
    y: Point,
    source: &[i64],
    cands: &Candidates,
) -> Result<Verdict, TopologyError> {
    let c = t.carrier();
    // OIP witnesses exclude the other point's middle from the lower layer.
    let mut witness_alphas: Vec<i64> = Vec::new();
    if let Some(f) = t.family() {
        witness_alphas.extend([x.s, y.s].iter().filter_map(|&k| f.witness(c, k).map(|(a, _)| a)));
    }
    let with_witnesses = |rest: Vec<i64>| witness_alphas.iter().copied().chain(rest).collect::<Vec<_>>();
    let xs = with_witnesses(lookup(t, cands, x, source)?);
    let ys = with_witnesses(lookup(t, cands, y, source)?);
    for &p in &xs {
        for &q in &ys {
            if t.nbhd(x, p)?.is_disjoint(&t.nbhd(y, q)?) {
                return Ok(Verdict::Holds(format!("{} disjoint from {}", t.base_at(x, p)?, t.base_at(y, q)?)));
            }
        }
    }
    Ok(Verdict::Fails(format!("{x} and {y} not separated within schedule")))
}

/// Disjoint base elements for every pair of distinct window points.
pub fn check_hausdorff<C: TopologyCarrier>(t: &TopologySpec<C>, points: &[Point], schedule: &super::Schedule) -> TopologyReport {
    let pairs: Vec<(Point, Point)> = points
        .iter()
        .flat_map(|&x| points.iter().filter(move |&&y| key(x) < key(y)).map(move |&y| (x, y)))
        .collect();
    let cands = candidate_map(t, points, &schedule.source);
    let items = pairs
        .par_iter()
        .map(|&(x, y)| ((key(x), key(y)), hausdorff_pair(t, x, y, &schedule.source, &cands).into()))
        .collect();
    TopologyReport::collect(items, schedule.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn separate_pair<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    x: Point,
    y: Point,
    schedule: &super::Schedule,
    cands: &Candidates,
) -> Result<Verdict, TopologyError> {
    let c = t.carrier();
    let z = t.mul(x, y)?;
    let left = lookup(t, cands, y, &schedule.source)?;
    let right = lookup(t, cands, x, &schedule.source)?;
    let mut witness = String::new();
    for &q in &schedule.target {
        let w = t.nbhd(z, q)?;
        for side in [Side::Left, Side::Right] {
            let (moving, list) = if side == Side::Left { (y, &left) } else { (x, &right) };
            let mut found = None;
            let mut leak = None;
            for &p in list {
                let v = t.nbhd(moving, p)?;
                let image = match side {
                    Side::Left => SymSet::point(x).product(&v, c)?,
                    Side::Right => v.product(&SymSet::point(y), c)?,
                };
                if image.is_subset(&w) {
                    found = Some(p);
                    break;
                }
                leak = image.difference(&w).pick();
            }
            match found {
                Some(p) if witness.is_empty() => {
                    witness = format!("{x}·{y}: W={} via V={}", t.base_at(z, q)?, t.base_at(moving, p)?)
                }
                Some(_) => {}
                None => {
                    let dir = if side == Side::Left { "x·V" } else { "V·y" };
                    return Ok(Verdict::Fails(format!(
                        "x={x} y={y} W={} ({dir} leaves W at {})",
                        t.base_at(z, q)?,
                        leak.map_or("?".into(), |p| p.to_string())
                    )));
                }
            }
        }
    }
    Ok(Verdict::Holds(witness))
}

/// For every window pair `(x, y)` and every scheduled `W ∋ xy`, some base
/// `V ∋ y` with `x·V ⊆ W` and some base `U ∋ x` with `U·y ⊆ W`.
pub fn check_separate_continuity<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    points: &[Point],
    schedule: &super::Schedule,
) -> TopologyReport {
    let cands = candidate_map(t, points, &schedule.source);
    pair_report(points, schedule, |x, y| separate_pair(t, x, y, schedule, &cands))
}

fn pair_report(
    points: &[Point],
    schedule: &super::Schedule,
    f: impl Fn(Point, Point) -> Result<Verdict, TopologyError> + Sync,
) -> TopologyReport {
    let pairs: Vec<(Point, Point)> = points.iter().flat_map(|&x| points.iter().map(move |&y| (x, y))).collect();
    let items = pairs.par_iter().map(|&(x, y)| ((key(x), key(y)), f(x, y).into())).collect();
    TopologyReport::collect(items, schedule.to_string())
}

fn joint_pair<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    x: Point,
    y: Point,
    schedule: &super::Schedule,
    cands: &Candidates,
) -> Result<Verdict, TopologyError> {
    let c = t.carrier();
    let z = t.mul(x, y)?;
    let xs = lookup(t, cands, x, &schedule.source)?;
    let ys = lookup(t, cands, y, &schedule.source)?;
    let mut witness = String::new();
    for &q in &schedule.target {
        let w = t.nbhd(z, q)?;
        let mut found = None;
        let mut leak = None;
        'search: for &p in &xs {
            let u = t.nbhd(x, p)?;
            for &r in &ys {
                let image = u.product(&t.nbhd(y, r)?, c)?;
                if image.is_subset(&w) {
                    found = Some((p, r));
                    break 'search;
                }
                leak = image.difference(&w).pick();
            }
        }
        match found {
            Some((p, r)) if witness.is_empty() => {
                witness = format!("{x}·{y}: W={} via U={} V={}", t.base_at(z, q)?, t.base_at(x, p)?, t.base_at(y, r)?)
            }
            Some(_) => {}
            None => {
                return Ok(Verdict::Fails(format!(
                    "x={x} y={y} W={} (U·V leaves W at {})",
                    t.base_at(z, q)?,
                    leak.map_or("?".into(), |p| p.to_string())
                )))
            }
        }
    }
    Ok(Verdict::Holds(witness))
}

/// For every window pair and scheduled `W ∋ xy`, bases `U ∋ x`, `V ∋ y`
/// with `U·V ⊆ W`.
pub fn check_joint_continuity<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    points: &[Point],
    schedule: &super::Schedule,
) -> TopologyReport {
    let cands = candidate_map(t, points, &schedule.source);
    pair_report(points, schedule, |x, y| joint_pair(t, x, y, schedule, &cands))
}

fn inversion_point<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    x: Point,
    schedule: &super::Schedule,
) -> Result<Verdict, TopologyError> {
    let c = t.carrier();
    let xi = t.inverse(x)?;
    let vs = candidates(t, x, &schedule.source)?;
    let mut witness = String::new();
    for &q in &schedule.target {
        let w = t.nbhd(xi, q)?;
        let mut found = None;
        let mut leak = None;
        for &p in &vs {
            let image = t.nbhd(x, p)?.inverse(c)?;
            if image.is_subset(&w) {
                found = Some(p);
                break;
            }
            leak = image.difference(&w).pick();
        }
        match found {
            Some(p) if witness.is_empty() => {
                witness = format!("{x}⁻¹={xi}: W={} via V={}", t.base_at(xi, q)?, t.base_at(x, p)?)
            }
            Some(_) => {}
            None => {
                let p = *vs.last().expect("nonempty schedule");
                return Ok(Verdict::Fails(format!(
                    "x={x} W={} V={}: inv(V) contains {} outside W",
                    t.base_at(xi, q)?,
                    t.base_at(x, p)?,
                    leak.map_or("?".into(), |p| p.to_string())
                )));
            }
        }
    }
    Ok(Verdict::Holds(witness))
}

/// For every window point and scheduled `W ∋ x⁻¹`, a base `V ∋ x` with
/// `V⁻¹ ⊆ W`.
pub fn check_inversion_continuity<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    points: &[Point],
    schedule: &super::Schedule,
) -> TopologyReport {
    let items = points
        .par_iter()
        .map(|&x| (key(x), inversion_point(t, x, schedule).into()))
        .collect();
    TopologyReport::collect(items, schedule.to_string())
}

/// Every base element has its layers on the diagonal below its anchor.
pub fn check_nbhd_lowerset<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    points: &[Point],
    schedule: &super::Schedule,
) -> TopologyReport {
    let items = points
        .par_iter()
        .map(|&x| {
            let v: Result<Verdict, TopologyError> = (|| {
                for &p in &schedule.source {
                    let b = t.base_at(x, p)?;
                    if let Some((i, _, j)) =
                        b.layers.iter().find(|(i, _, j)| !(x.i - i >= 0 && x.i - i == x.j - j))
                    {
                        return Ok(Verdict::Fails(format!("{b} has a layer at ({i},{j})")));
                    }
                }
                Ok(Verdict::Holds(format!("{}", t.base_at(x, *schedule.source.last().unwrap())?)))
            })();
            (key(x), v.into())
        })
        .collect();
    TopologyReport::collect(items, schedule.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarserReport {
    /// Every base element is a union of direct-sum atoms (the carrier is
    /// discrete, so each layer is open).
    pub coarser: bool,
    /// A unit-layer point whose singleton contains no base element.
    pub strict_witness: Option<String>,
    pub undecidable: Option<String>,
}

impl CoarserReport {
    pub fn holds(&self) -> bool {
        self.coarser && self.strict_witness.is_some() && self.undecidable.is_none()
    }
}

/// Strictly coarser than the direct sum topology: at some point every
/// scheduled base element has a nonempty lower layer.
pub fn check_coarser_strict<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    points: &[Point],
    schedule: &super::Schedule,
) -> CoarserReport {
    let mut report = CoarserReport { coarser: true, strict_witness: None, undecidable: None };
    let mut sorted = points.to_vec();
    sorted.sort_by_key(|&x| key(x));
    for x in sorted.into_iter().filter(|&x| t.is_special(x)) {
        let all_fat = schedule.source.iter().try_fold(true, |acc, &p| {
            t.nbhd(x, p).map(|n| acc && !n.at(x.i - 1, x.j - 1).is_empty())
        });
        match all_fat {
            Ok(true) => {
                let p = *schedule.source.last().unwrap();
                report.strict_witness = Some(format!("{{{x}}} contains no base element; smallest is {}", t.base_at(x, p).unwrap()));
                return report;
            }
            Ok(false) => {}
            Err(e) => {
                report.undecidable = Some(e.to_string());
                return report;
            }
        }
    }
    report
}

/// The base restricted to `S_{0,0}` is discrete: each `(0, s, 0)` has a base
/// element meeting `S_{0,0}` in just that point.
pub fn check_restriction_discrete<C: TopologyCarrier>(
    t: &TopologySpec<C>,
    g_bound: i64,
    schedule: &super::Schedule,
) -> TopologyReport {
    let items = t
        .points(0, 0, g_bound)
        .into_iter()
        .map(|x| {
            let v: Result<Verdict, TopologyError> = (|| {
                for &p in &schedule.source {
                    if t.nbhd(x, p)?.at(0, 0) == super::PointSet::point(x.s) {
                        return Ok(Verdict::Holds(format!("{} ∩ S_0,0 = {{{x}}}", t.base_at(x, p)?)));
                    }
                }
                Ok(Verdict::Fails(format!("{x} has no base element isolated in S_0,0")))
            })();
            (key(x), v.into())
        })
        .collect();
    TopologyReport::collect(items, schedule.to_string())
}

/// Every window point has a singleton base element.
pub fn is_discrete<C: TopologyCarrier>(t: &TopologySpec<C>, points: &[Point], schedule: &super::Schedule) -> TopologyReport {
    let items = points
        .iter()
        .map(|&x| {
            let v: Result<Verdict, TopologyError> = (|| {
                for &p in &schedule.source {
                    if t.nbhd(x, p)? == SymSet::point(x) {
                        return Ok(Verdict::Holds(format!("{{{x}}} is a base element")));
                    }
                }
                Ok(Verdict::Fails(format!("{x} has no singleton base element")))
            })();
            (key(x), v.into())
        })
        .collect();
    TopologyReport::collect(items, schedule.to_string())
}

/// The topology kinds defined for a carrier.
pub fn applicable_kinds<C: TopologyCarrier>(c: &C) -> Vec<TopologyKind> {
    TopologyKind::ALL.into_iter().filter(|&k| TopologySpec::new(k, c.clone()).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{IntCarrier, NatCarrier, NatOp, TableCarrier};
    use crate::monoid::{builtin, IntGroupEndo};

    fn run<C: TopologyCarrier>(t: &TopologySpec<C>) -> [TopologyReport; 4] {
        let pts = t.points(-1, 1, 2);
        let sch = t.default_schedule(1, 2);
        [
            check_hausdorff(t, &pts, &sch),
            check_separate_continuity(t, &pts, &sch),
            check_joint_continuity(t, &pts, &sch),
            check_inversion_continuity(t, &pts, &sch),
        ]
    }

    #[test]
    fn naturals_are_semitopological_and_hausdorff() {
        for (kind, op) in [(TopologyKind::Example2_7, NatOp::Add), (TopologyKind::Example2_8, NatOp::Max)] {
            let t = TopologySpec::new(kind, NatCarrier::new(op)).unwrap();
            let [h, s, j, _] = run(&t);
            assert!(h.holds(), "{kind} {:?}", h.first_failure);
            assert!(s.holds(), "{kind} {:?}", s.first_failure);
            assert!(j.holds(), "{kind} {:?}", j.first_failure);
        }
    }

    #[test]
    fn integers_annihilating() {
        let z = IntCarrier::new(IntGroupEndo::Annihilating);
        let t = TopologySpec::new(TopologyKind::Example3_7, z.clone()).unwrap();
        let [h, s, j, inv] = run(&t);
        assert!(h.holds() && s.holds() && j.holds(), "{:?} {:?} {:?}", h.first_failure, s.first_failure, j.first_failure);
        assert!(inv.failures > 0 && inv.undecidable == 0, "{inv:?}");

        let t = TopologySpec::new(TopologyKind::Example3_9, z).unwrap();
        let [h, s, j, inv] = run(&t);
        assert!(h.holds() && s.holds() && inv.holds(), "{:?} {:?} {:?}", h.first_failure, s.first_failure, inv.first_failure);
        assert!(j.failures > 0 && j.undecidable == 0, "{j:?}");
    }

    #[test]
    fn coarsened_and_direct_sum() {
        for op in [NatOp::Add, NatOp::Max] {
            let t = TopologySpec::new(TopologyKind::Coarsened, NatCarrier::new(op)).unwrap();
            let [h, s, _, _] = run(&t);
            assert!(h.holds() && s.holds(), "{:?} {:?}", h.first_failure, s.first_failure);
            let pts = t.points(-1, 1, 2);
            assert!(check_coarser_strict(&t, &pts, &t.default_schedule(1, 2)).holds());
            assert!(check_restriction_discrete(&t, 3, &t.default_schedule(1, 2)).holds());
        }
        let c6 = TableCarrier::with_annihilating(builtin::cyclic(6), "c6");
        let t = TopologySpec::new(TopologyKind::DirectSum, c6).unwrap();
        for r in run(&t) {
            assert!(r.holds(), "{:?}", r.first_failure);
        }
        let pts = t.points(-1, 1, 6);
        assert!(!check_coarser_strict(&t, &pts, &t.default_schedule(1, 6)).holds());
    }

    #[test]
    fn trivial_carrier_is_discrete_only() {
        let c = TableCarrier::with_annihilating(builtin::trivial(), "trivial");
        assert_eq!(applicable_kinds(&c), vec![TopologyKind::DirectSum]);
        let t = TopologySpec::new(TopologyKind::DirectSum, c).unwrap();
        assert!(is_discrete(&t, &t.points(-2, 2, 1), &t.default_schedule(2, 1)).holds());
    }
}
