//! Structural checks on finite windows of an extension: idempotents and
//! their order, bounded approximations of Green's relations, simplicity and
//! bisimplicity evidence, and how inverse/regular carriers transfer.
//!
//! Windows are not closed under multiplication. Every search draws its
//! multipliers from an enlarged window and labels negative answers as
//! relative to that bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::extensions::Extension;
use crate::monoid::{ElementId, FiniteMonoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{0} is not idempotent")]
    NotIdempotent(String),
    #[error("multiplier bound {bound} is smaller than the window span {span}")]
    BoundTooSmall { bound: i64, span: i64 },
    #[error("monoid is not a Clifford monoid")]
    NotClifford,
    #[error("{0} is not an ideal of the idempotents")]
    NotIdealOfIdempotents(String),
    #[error("pullback fails to absorb: {0}")]
    PullbackNotIdeal(String),
    #[error("brute-force idempotents differ from the closed form at {0}")]
    IdempotentMismatch(String),
}

/// `{(i, s, j) : lo <= i, j <= hi}` with `s` from the carrier sample.
#[derive(Debug, Clone)]
pub struct Window<T> {
    pub lo: i64,
    pub hi: i64,
    pub g_bound: i64,
    pub elements: Vec<T>,
}

impl<T: Copy> Window<T> {
    pub fn new<E: Extension<Elem = T>>(ext: &E, lo: i64, hi: i64, g_bound: i64) -> Self {
        Window { lo, hi, g_bound, elements: ext.window(lo, hi, g_bound) }
    }

    pub fn span(&self) -> i64 {
        self.hi - self.lo
    }

    /// The window grown by `by` in each index direction, with the middle
    /// bound doubled so differences of sampled values are reachable.
    pub fn enlarged<E: Extension<Elem = T>>(&self, ext: &E, by: i64) -> Vec<T> {
        ext.window(self.lo - by, self.hi + by, 2 * self.g_bound)
    }
}

fn grade<E: Extension>(ext: &E, x: E::Elem) -> i64 {
    let (i, j) = ext.indices(x);
    i - j
}

fn by_grade<E: Extension>(ext: &E, xs: &[E::Elem]) -> HashMap<i64, Vec<E::Elem>> {
    let mut out: HashMap<i64, Vec<E::Elem>> = HashMap::new();
    for &x in xs {
        out.entry(grade(ext, x)).or_default().push(x);
    }
    out
}

fn sorted<E: Extension>(ext: &E, mut xs: Vec<E::Elem>) -> Vec<E::Elem> {
    xs.sort_by_key(|&x| ext.sort_key(x));
    xs
}

/// Brute-force `{x : x·x = x}` on the window, checked against the closed
/// form `{(i, e, i)}`.
pub fn idempotents_ext<E: Extension>(ext: &E, w: &Window<E::Elem>) -> Result<Vec<E::Elem>, StructureError> {
    let brute: BTreeSet<_> = w.elements.iter().copied().filter(|&x| ext.mul(x, x) == x).collect();
    let closed: BTreeSet<_> = ext.closed_form_idempotents(w.lo, w.hi, w.g_bound).into_iter().collect();
    if let Some(&x) = brute.symmetric_difference(&closed).next() {
        return Err(StructureError::IdempotentMismatch(ext.show(x)));
    }
    Ok(sorted(ext, brute.into_iter().collect()))
}

/// `x <= y` iff `xy = yx = x`, for idempotents.
pub fn natural_order_ext<E: Extension>(ext: &E, x: E::Elem, y: E::Elem) -> Result<bool, StructureError> {
    for z in [x, y] {
        if ext.mul(z, z) != z {
            return Err(StructureError::NotIdempotent(ext.show(z)));
        }
    }
    Ok(ext.mul(x, y) == x && ext.mul(y, x) == x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
}

/// A partition of a window into approximate Green classes. Related pairs
/// are genuinely related; unrelated pairs are only unrelated up to
/// `multiplier_bound`.
#[derive(Debug, Clone)]
pub struct GreenClasses<T> {
    pub relation: GreenRelation,
    pub classes: Vec<Vec<T>>,
    pub multiplier_bound: i64,
    /// Whether `R∘L` and `L∘R` coincide on the window (only set for `D`).
    pub compositions_agree: Option<bool>,
}

impl<T: Copy + Eq + std::hash::Hash> GreenClasses<T> {
    pub fn class_of(&self, x: T) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&x))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.0.len()).map(|i| self.find(i)).collect()
    }
}

fn partition<T: Copy>(elements: &[T], labels: &[usize]) -> Vec<Vec<T>> {
    let mut cells: BTreeMap<usize, Vec<T>> = BTreeMap::new();
    for (k, &x) in elements.iter().enumerate() {
        cells.entry(labels[k]).or_default().push(x);
    }
    cells.into_values().collect()
}

// Indices of window elements reachable as x·m (right) or m·x (left),
// together with x itself.
fn principal<E: Extension>(ext: &E, elements: &[E::Elem], mults: &[E::Elem], right: bool) -> Vec<HashSet<usize>> {
    let index: HashMap<E::Elem, usize> = elements.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    elements
        .par_iter()
        .enumerate()
        .map(|(k, &x)| {
            let mut reach: HashSet<usize> = HashSet::from([k]);
            for &m in mults {
                let p = if right { ext.mul(x, m) } else { ext.mul(m, x) };
                if let Some(&q) = index.get(&p) {
                    reach.insert(q);
                }
            }
            reach
        })
        .collect()
}

fn mutual_labels(reach: &[HashSet<usize>]) -> Vec<usize> {
    let mut uf = UnionFind::new(reach.len());
    for (a, ra) in reach.iter().enumerate() {
        for &b in ra {
            if b > a && reach[b].contains(&a) {
                uf.union(a, b);
            }
        }
    }
    uf.labels()
}

/// Bounded approximation of `R`, `L`, `H` or `D` on the window. Multipliers
/// range over the window enlarged by `multiplier_bound` index units.
pub fn greens<E: Extension>(
    ext: &E,
    w: &Window<E::Elem>,
    rel: GreenRelation,
    multiplier_bound: i64,
) -> Result<GreenClasses<E::Elem>, StructureError> {
    if multiplier_bound < w.span() {
        return Err(StructureError::BoundTooSmall { bound: multiplier_bound, span: w.span() });
    }
    let mults = w.enlarged(ext, multiplier_bound);
    let elements = sorted(ext, w.elements.clone());
    let need_r = rel != GreenRelation::L;
    let need_l = rel != GreenRelation::R;
    let r = need_r.then(|| mutual_labels(&principal(ext, &elements, &mults, true)));
    let l = need_l.then(|| mutual_labels(&principal(ext, &elements, &mults, false)));
    let n = elements.len();
    let mut compositions_agree = None;
    let labels = match rel {
        GreenRelation::R => r.unwrap(),
        GreenRelation::L => l.unwrap(),
        GreenRelation::H => {
            let (r, l) = (r.unwrap(), l.unwrap());
            let mut uf = UnionFind::new(n);
            let mut first: HashMap<(usize, usize), usize> = HashMap::new();
            for k in 0..n {
                let f = *first.entry((r[k], l[k])).or_insert(k);
                uf.union(f, k);
            }
            uf.labels()
        }
        GreenRelation::D => {
            let (r, l) = (r.unwrap(), l.unwrap());
            let present: HashSet<(usize, usize)> = (0..n).map(|k| (r[k], l[k])).collect();
            let agree = (0..n).all(|x| {
                (0..n).all(|y| present.contains(&(r[x], l[y])) == present.contains(&(r[y], l[x])))
            });
            compositions_agree = Some(agree);
            let mut uf = UnionFind::new(n);
            for k in 0..n {
                uf.union(k, r[k]);
                uf.union(k, l[k]);
            }
            uf.labels()
        }
    };
    Ok(GreenClasses { relation: rel, classes: partition(&elements, &labels), multiplier_bound, compositions_agree })
}

/// Outcome of a search for `x·a·y = b` over sampled pairs.
#[derive(Debug, Clone)]
pub struct SimpleReport<T> {
    pub witnesses: Vec<(T, T, T, T)>,
    pub failures: Vec<(T, T)>,
    pub enlargement: i64,
    pub seed: u64,
}

impl<T> SimpleReport<T> {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` pairs `(a, b)` drawn from the window with a seeded generator.
pub fn sample_pairs<T: Copy>(w: &Window<T>, count: usize, seed: u64) -> Vec<(T, T)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = w.elements.len();
    if n == 0 {
        return Vec::new();
    }
    (0..count)
        .map(|_| (w.elements[rng.random_range(0..n)], w.elements[rng.random_range(0..n)]))
        .collect()
}

/// For each pair, look for `x, y` in the enlarged window with `x·a·y = b`.
pub fn check_simple<E: Extension>(
    ext: &E,
    w: &Window<E::Elem>,
    pairs: &[(E::Elem, E::Elem)],
    enlargement: i64,
    seed: u64,
) -> SimpleReport<E::Elem> {
    let mults = w.enlarged(ext, enlargement);
    let graded = by_grade(ext, &mults);
    let found: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let target = grade(ext, b);
            for &x in &mults {
                let xa = ext.mul(x, a);
                let Some(ys) = graded.get(&(target - grade(ext, xa))) else { continue };
                if let Some(&y) = ys.iter().find(|&&y| ext.mul(xa, y) == b) {
                    return Ok((a, b, x, y));
                }
            }
            Err((a, b))
        })
        .collect();
    let mut report = SimpleReport { witnesses: Vec::new(), failures: Vec::new(), enlargement, seed };
    for r in found {
        match r {
            Ok(w) => report.witnesses.push(w),
            Err(f) => report.failures.push(f),
        }
    }
    report
}

/// Per-element inverse counts over an enlarged candidate set.
#[derive(Debug, Clone)]
pub struct InverseReport<T> {
    pub carrier_inverse: bool,
    pub elements: usize,
    pub unique: usize,
    /// Smallest element with two or more inverses, with those inverses.
    pub multiple: Option<(T, Vec<T>)>,
    /// Smallest element with no inverse among the candidates.
    pub missing: Option<T>,
    pub enlargement: i64,
}

impl<T> InverseReport<T> {
    /// Inverse carrier: every element has exactly one inverse. Otherwise:
    /// some element has at least two.
    pub fn holds(&self) -> bool {
        if self.carrier_inverse {
            self.unique == self.elements
        } else {
            self.multiple.is_some()
        }
    }
}

fn inverses_of<E: Extension>(ext: &E, x: E::Elem, graded: &HashMap<i64, Vec<E::Elem>>) -> Vec<E::Elem> {
    graded
        .get(&-grade(ext, x))
        .map(|ys| {
            ys.iter()
                .copied()
                .filter(|&y| ext.mul(ext.mul(x, y), x) == x && ext.mul(ext.mul(y, x), y) == y)
                .collect()
        })
        .unwrap_or_default()
}

pub fn check_inverse_transfer<E: Extension>(
    ext: &E,
    w: &Window<E::Elem>,
    carrier_inverse: bool,
    enlargement: i64,
) -> InverseReport<E::Elem> {
    let graded = by_grade(ext, &w.enlarged(ext, enlargement));
    let elements = sorted(ext, w.elements.clone());
    let counts: Vec<Vec<E::Elem>> =
        elements.par_iter().map(|&x| sorted(ext, inverses_of(ext, x, &graded))).collect();
    let mut report = InverseReport {
        carrier_inverse,
        elements: elements.len(),
        unique: 0,
        multiple: None,
        missing: None,
        enlargement,
    };
    for (&x, invs) in elements.iter().zip(counts) {
        match invs.len() {
            0 => {
                report.missing.get_or_insert(x);
            }
            1 => report.unique += 1,
            _ => {
                report.multiple.get_or_insert((x, invs));
            }
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct RegularReport<T> {
    pub carrier_regular: bool,
    pub elements: usize,
    pub regular: usize,
    /// Smallest element without an inner inverse among the candidates.
    pub irregular: Option<T>,
    pub enlargement: i64,
}

impl<T> RegularReport<T> {
    pub fn holds(&self) -> bool {
        if self.carrier_regular {
            self.regular == self.elements
        } else {
            self.irregular.is_some()
        }
    }
}

pub fn check_regular_transfer<E: Extension>(
    ext: &E,
    w: &Window<E::Elem>,
    carrier_regular: bool,
    enlargement: i64,
) -> RegularReport<E::Elem> {
    let graded = by_grade(ext, &w.enlarged(ext, enlargement));
    let elements = sorted(ext, w.elements.clone());
    let ok: Vec<bool> = elements
        .par_iter()
        .map(|&x| {
            graded
                .get(&-grade(ext, x))
                .is_some_and(|ys| ys.iter().any(|&y| ext.mul(ext.mul(x, y), x) == x))
        })
        .collect();
    RegularReport {
        carrier_regular,
        elements: elements.len(),
        regular: ok.iter().filter(|&&b| b).count(),
        irregular: elements.iter().zip(&ok).find(|(_, &b)| !b).map(|(&x, _)| x),
        enlargement,
    }
}

#[derive(Debug, Clone)]
pub struct BisimpleReport {
    pub idempotents: usize,
    pub is_chain: bool,
    pub per_level: usize,
    pub anti_isomorphic: bool,
    pub d_classes: usize,
    pub shape: String,
}

impl BisimpleReport {
    pub fn holds(&self) -> bool {
        self.anti_isomorphic && self.d_classes == 1
    }
}

/// Idempotents should form a chain with `(n,·,n) <= (m,·,m)` iff `n >= m`,
/// one per index level, and the window should be a single `D` class.
pub fn check_i_bisimple<E: Extension>(
    ext: &E,
    w: &Window<E::Elem>,
    multiplier_bound: i64,
) -> Result<BisimpleReport, StructureError> {
    let es = idempotents_ext(ext, w)?;
    let leq = |x, y| natural_order_ext(ext, x, y);
    let mut is_chain = true;
    let mut order_reversing = true;
    for &x in &es {
        for &y in &es {
            let (xy, yx) = (leq(x, y)?, leq(y, x)?);
            is_chain &= xy || yx;
            let (n, m) = (ext.indices(x).0, ext.indices(y).0);
            order_reversing &= xy == (n >= m);
        }
    }
    let mut levels: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in &es {
        *levels.entry(ext.indices(x).0).or_default() += 1;
    }
    let per_level = levels.values().copied().max().unwrap_or(0);
    let d = greens(ext, w, GreenRelation::D, multiplier_bound)?;
    let shape = if !is_chain {
        "not a chain".to_string()
    } else if per_level == 1 {
        "chain, 1 idempotent per level".to_string()
    } else {
        format!("chain, {per_level} idempotents per level")
    };
    Ok(BisimpleReport {
        idempotents: es.len(),
        is_chain,
        per_level,
        anti_isomorphic: is_chain && per_level == 1 && order_reversing,
        d_classes: d.classes.len(),
        shape,
    })
}

/// `φ^{k,l}_{i,j}(x) = (k,1,i)·x·(j,1,l)`.
pub fn translation<E: Extension>(ext: &E, (i, j): (i64, i64), (k, l): (i64, i64), x: E::Elem) -> E::Elem {
    ext.mul(ext.mul(ext.layer_unit(k, i), x), ext.layer_unit(j, l))
}

/// `φ^{k,l}_{i,j}` maps the sampled layer `S_{i,j}` bijectively onto
/// `S_{k,l}` with inverse `φ^{i,j}_{k,l}`, and on a diagonal layer it is
/// multiplicative.
pub fn check_translation<E: Extension>(ext: &E, from: (i64, i64), to: (i64, i64), g_bound: i64) -> bool {
    let lo = from.0.min(from.1).min(to.0).min(to.1);
    let hi = from.0.max(from.1).max(to.0).max(to.1);
    let layer = |(a, b): (i64, i64)| -> Vec<E::Elem> {
        ext.window(lo, hi, g_bound).into_iter().filter(|&x| ext.indices(x) == (a, b)).collect()
    };
    let src = layer(from);
    let dst: BTreeSet<_> = layer(to).into_iter().collect();
    let image: BTreeSet<_> = src.iter().map(|&x| translation(ext, from, to, x)).collect();
    let round_trip = src.iter().all(|&x| translation(ext, to, from, translation(ext, from, to, x)) == x);
    let mut ok = image == dst && round_trip;
    if from.0 == from.1 && to.0 == to.1 {
        ok &= src.iter().all(|&x| {
            src.iter().all(|&y| {
                translation(ext, from, to, ext.mul(x, y))
                    == ext.mul(translation(ext, from, to, x), translation(ext, from, to, y))
            })
        });
    }
    ok
}

/// `φ⁻¹(I)` for `φ(x) = x·x⁻¹` on a Clifford monoid, where `I` is an ideal
/// of the idempotents.
pub fn ideal_pullback(m: &FiniteMonoid, ideal: &BTreeSet<ElementId>) -> Result<BTreeSet<ElementId>, StructureError> {
    let class = m.classify();
    let inv = match (&class.inverse_map, class.is_clifford) {
        (Some(inv), true) => inv,
        _ => return Err(StructureError::NotClifford),
    };
    let es = m.idempotents();
    let show = |s: &BTreeSet<ElementId>| format!("{:?}", s.iter().map(|e| e.0).collect::<Vec<_>>());
    let absorbs = ideal.iter().all(|&i| es.contains(&i) && es.iter().all(|&e| ideal.contains(&m.mul(i, e)) && ideal.contains(&m.mul(e, i))));
    if !absorbs {
        return Err(StructureError::NotIdealOfIdempotents(show(ideal)));
    }
    let pre: BTreeSet<ElementId> = m.elements().filter(|&x| ideal.contains(&m.mul(x, inv[x.0]))).collect();
    for &x in &pre {
        for s in m.elements() {
            if !pre.contains(&m.mul(x, s)) || !pre.contains(&m.mul(s, x)) {
                return Err(StructureError::PullbackNotIdeal(format!("{} with {}", x, s)));
            }
        }
    }
    Ok(pre)
}
