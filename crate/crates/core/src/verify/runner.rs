use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::recipe::{warne_system, Built, BuiltCarrier, Construction, Recipe};
use super::suite::{Check, Suite};
use crate::carrier::{Carrier, GroupCarrier, TableCarrier};
use crate::extensions::{Bruck, BruckReilly, ExtBicyclic, Extension, WarneSystem};
use crate::structure::{
    check_i_bisimple, check_inverse_transfer, check_regular_transfer, check_simple, check_translation,
    idempotents_ext, sample_pairs, Window,
};
use crate::topology::{
    applicable_kinds, check_coarser_strict, check_hausdorff, check_inversion_continuity, check_joint_continuity,
    check_nbhd_lowerset, check_oip, check_restriction_discrete, check_separate_continuity, example_3_7_containments,
    is_discrete, OipFamily, TopologyCarrier, TopologyReport, TopologySpec,
};

/// What a check found, before expectations are applied.
pub(super) enum Finding {
    Holds(String),
    /// An exact counterexample.
    Refuted(String),
    /// No witness within the search schedule.
    Exhausted(String),
    Undecidable(String),
    NotApplicable(String),
}

pub(super) struct Outcome {
    pub finding: Finding,
    pub counts: BTreeMap<String, u64>,
}

impl Outcome {
    fn new(finding: Finding) -> Self {
        Outcome { finding, counts: BTreeMap::new() }
    }

    fn count(mut self, key: &str, n: impl TryInto<u64>) -> Self {
        self.counts.insert(key.to_string(), n.try_into().unwrap_or(u64::MAX));
        self
    }
}

struct Props {
    inverse: bool,
    regular: bool,
}

pub(super) fn evaluate(built: &Built, recipe: &Recipe, s: &Suite, check: &Check) -> Outcome {
    if let Check::Example37Containments { indices, tails, groups } = check {
        return containments(*indices, *tails, *groups);
    }
    let none_t: Option<&TableCarrier> = None;
    let none_w: Option<&WarneSystem<TableCarrier>> = None;
    let both = Props { inverse: true, regular: true };
    match built {
        Built::Bicyclic => eval(&ExtBicyclic, none_t, none_w, both, s, check),
        Built::Carried(k, carrier) => match (k, carrier) {
            (Construction::Warne, BuiltCarrier::Table(c)) => match warne_system(c, &recipe.u) {
                Ok(w) => eval(&w, none_t, Some(&w), both, s, check),
                Err(e) => Outcome::new(Finding::NotApplicable(e.to_string())),
            },
            (Construction::Warne, BuiltCarrier::Int(c)) => match warne_system(c, &recipe.u) {
                Ok(w) => eval(&w, none_t, Some(&w), both, s, check),
                Err(e) => Outcome::new(Finding::NotApplicable(e.to_string())),
            },
            (Construction::Zbr, BuiltCarrier::Table(c)) => {
                let p = Props { inverse: c.is_inverse(), regular: c.is_regular() };
                eval(&BruckReilly::new(c.clone()), Some(c), none_w, p, s, check)
            }
            (Construction::Zbr, BuiltCarrier::Int(c)) => {
                eval(&BruckReilly::new(*c), Some(c), none_w, Props { inverse: true, regular: true }, s, check)
            }
            (Construction::Zbr, BuiltCarrier::Nat(c)) => {
                let p = Props { inverse: c.is_inverse(), regular: c.is_regular() };
                eval(&BruckReilly::new(c.clone()), Some(c), none_w, p, s, check)
            }
            (Construction::Zbruck, BuiltCarrier::Table(c)) => {
                let p = Props { inverse: c.is_inverse(), regular: c.is_regular() };
                eval(&Bruck::new(c.clone()), Some(&c.annihilated()), none_w, p, s, check)
            }
            (Construction::Zbruck, BuiltCarrier::Int(c)) => {
                eval(&Bruck::new(*c), Some(&c.annihilated()), none_w, Props { inverse: true, regular: true }, s, check)
            }
            (Construction::Zbruck, BuiltCarrier::Nat(c)) => {
                let p = Props { inverse: c.is_inverse(), regular: c.is_regular() };
                eval(&Bruck::new(c.clone()), Some(&c.annihilated()), none_w, p, s, check)
            }
            _ => Outcome::new(Finding::NotApplicable(format!("{} over this carrier", recipe.construction))),
        },
    }
}

fn eval<E: Extension, C: TopologyCarrier, G: GroupCarrier>(
    ext: &E,
    topo: Option<&C>,
    warne: Option<&WarneSystem<G>>,
    props: Props,
    s: &Suite,
    check: &Check,
) -> Outcome {
    let (lo, hi) = s.window;
    let g = s.g_bound;
    let window = || Window::new(ext, lo, hi, g);
    match check {
        Check::Associativity => associativity(ext, &ext.window(lo, hi, g)),
        Check::Grading => grading(ext, &ext.window(lo, hi, g)),
        Check::GradingFuzz { samples, seed, spread } => grading_fuzz(ext, *samples, *seed, *spread, g),
        Check::Idempotents => match idempotents_ext(ext, &window()) {
            Ok(es) => {
                let shown: Vec<String> = es.iter().take(3).map(|&e| ext.show(e)).collect();
                Outcome::new(Finding::Holds(format!("{} ...", shown.join(" ")))).count("idempotents", es.len())
            }
            Err(e) => Outcome::new(Finding::Refuted(e.to_string())),
        },
        Check::Simple { pairs, enlargement, seed } => {
            let w = window();
            let sample = sample_pairs(&w, *pairs, *seed);
            let r = check_simple(ext, &w, &sample, *enlargement, *seed);
            let finding = match r.failures.iter().min_by_key(|(a, b)| (ext.sort_key(*a), ext.sort_key(*b))) {
                Some(&(a, b)) => Finding::Exhausted(format!(
                    "no x·{}·y = {} with multipliers within {enlargement} of the window",
                    ext.show(a),
                    ext.show(b)
                )),
                None => Finding::Holds(r.witnesses.first().map_or(String::new(), |&(a, b, x, y)| {
                    format!("{}·{}·{} = {}", ext.show(x), ext.show(a), ext.show(y), ext.show(b))
                })),
            };
            Outcome::new(finding).count("pairs", sample.len()).count("failures", r.failures.len())
        }
        Check::InverseTransfer { enlargement } => {
            let w = window();
            let r = check_inverse_transfer(ext, &w, props.inverse, *enlargement);
            let multiple = r.multiple.as_ref().map(|(x, ys)| {
                let ys: Vec<String> = ys.iter().map(|&y| ext.show(y)).collect();
                format!("{} has inverses {}", ext.show(*x), ys.join(", "))
            });
            let finding = if r.holds() {
                Finding::Holds(multiple.unwrap_or(format!("unique inverses for all {} elements", r.elements)))
            } else if let Some(m) = multiple {
                Finding::Refuted(m)
            } else if let Some(x) = r.missing {
                Finding::Exhausted(format!("{} has no inverse within {enlargement} of the window", ext.show(x)))
            } else {
                Finding::Exhausted("no element with two inverses in the window".into())
            };
            Outcome::new(finding)
                .count("elements", r.elements)
                .count("unique", r.unique)
                .count("carrier-inverse", u64::from(props.inverse))
        }
        Check::RegularTransfer { enlargement } => {
            let w = window();
            let r = check_regular_transfer(ext, &w, props.regular, *enlargement);
            let finding = match (r.holds(), r.irregular) {
                (true, Some(x)) => Finding::Holds(format!("{} is not regular", ext.show(x))),
                (true, None) => Finding::Holds(format!("all {} elements regular", r.elements)),
                (false, Some(x)) => Finding::Exhausted(format!("{} has no inner inverse nearby", ext.show(x))),
                (false, None) => Finding::Exhausted("every window element is regular".into()),
            };
            Outcome::new(finding).count("elements", r.elements).count("regular", r.regular)
        }
        Check::IBisimple { bound } => match check_i_bisimple(ext, &window(), *bound) {
            Ok(r) => {
                let w = format!("{}; {} D-class(es)", r.shape, r.d_classes);
                let f = if r.holds() { Finding::Holds(w) } else { Finding::Refuted(w) };
                Outcome::new(f).count("idempotents", r.idempotents).count("d-classes", r.d_classes)
            }
            Err(e) => Outcome::new(Finding::NotApplicable(e.to_string())),
        },
        Check::Translation => {
            let moves = [((lo, hi), (hi, lo)), ((lo, lo), (hi, hi)), ((hi, lo), (lo, lo))];
            let bad = moves.iter().find(|&&(a, b)| !check_translation(ext, a, b, g));
            let f = match bad {
                Some((a, b)) => Finding::Refuted(format!("translation {a:?} -> {b:?} is not a bijection")),
                None => Finding::Holds(format!("{:?} -> {:?} and back", moves[0].0, moves[0].1)),
            };
            Outcome::new(f).count("layer-pairs", moves.len())
        }
        Check::WarneUnitCoefficient { lo, hi } => match warne {
            None => Outcome::new(Finding::NotApplicable("needs the warne construction".into())),
            Some(w) => {
                let e = w.group().unit();
                let bad = (*lo..=*hi).find(|&n| w.f_coeff(0, n).map_or(true, |f| f != e));
                let f = match bad {
                    Some(n) => Finding::Refuted(format!("f_0,{n} is not the identity")),
                    None => Finding::Holds(format!("f_0,n = e for n in [{lo},{hi}]")),
                };
                Outcome::new(f).count("indices", (hi - lo + 1).max(0))
            }
        },
        Check::WarneBranchAgreement => match warne {
            None => Outcome::new(Finding::NotApplicable("needs the warne construction".into())),
            Some(w) => branch_agreement(w, lo, hi, g),
        },
        Check::ApplicableKinds { expected } => match topo {
            None => Outcome::new(Finding::NotApplicable("needs a Bruck-Reilly construction".into())),
            Some(c) => {
                let got = applicable_kinds(c);
                let names: Vec<&str> = got.iter().map(|k| k.name()).collect();
                let f = if &got == expected { Finding::Holds(names.join(",")) } else { Finding::Refuted(names.join(",")) };
                Outcome::new(f).count("kinds", got.len())
            }
        },
        Check::Oip { upto } => match topo {
            None => Outcome::new(Finding::NotApplicable("needs a Bruck-Reilly construction".into())),
            Some(c) => oip(c, *upto, g),
        },
        _ => match topo {
            None => Outcome::new(Finding::NotApplicable("topology checks need zbr or zbruck".into())),
            Some(c) => topology(c, s, check),
        },
    }
}

type Key = (u64, i64, i64, i64);

fn associativity<E: Extension>(ext: &E, w: &[E::Elem]) -> Outcome {
    let n = w.len();
    let yz: Vec<E::Elem> = w.par_iter().flat_map_iter(|&y| w.iter().map(move |&z| ext.mul(y, z))).collect();
    let worst = w
        .par_iter()
        .filter_map(|&x| {
            let mut first: Option<((Key, Key, Key), String)> = None;
            for (a, &y) in w.iter().enumerate() {
                let xy = ext.mul(x, y);
                for (b, &z) in w.iter().enumerate() {
                    let (l, r) = (ext.mul(xy, z), ext.mul(x, yz[a * n + b]));
                    if l != r {
                        let key = (ext.sort_key(x), ext.sort_key(y), ext.sort_key(z));
                        if first.as_ref().is_none_or(|(k, _)| key < *k) {
                            let msg = format!(
                                "x={} y={} z={}: (xy)z={} x(yz)={}",
                                ext.show(x),
                                ext.show(y),
                                ext.show(z),
                                ext.show(l),
                                ext.show(r)
                            );
                            first = Some((key, msg));
                        }
                    }
                }
            }
            first
        })
        .min_by(|a, b| a.0.cmp(&b.0));
    let f = match worst {
        Some((_, msg)) => Finding::Refuted(msg),
        None => Finding::Holds(String::new()),
    };
    Outcome::new(f).count("elements", n).count("triples", (n as u64).pow(3))
}

fn graded<E: Extension>(ext: &E, x: E::Elem, y: E::Elem) -> Option<String> {
    let ((i, j), (m, n)) = (ext.indices(x), ext.indices(y));
    let p = ext.mul(x, y);
    let (k, l) = ext.indices(p);
    (k - l != i - j + m - n).then(|| format!("{}·{} = {}", ext.show(x), ext.show(y), ext.show(p)))
}

fn grading<E: Extension>(ext: &E, w: &[E::Elem]) -> Outcome {
    let bad = w
        .par_iter()
        .filter_map(|&x| w.iter().find_map(|&y| graded(ext, x, y).map(|m| ((ext.sort_key(x), ext.sort_key(y)), m))))
        .min_by(|a, b| a.0.cmp(&b.0));
    let f = bad.map_or(Finding::Holds(String::new()), |(_, m)| Finding::Refuted(m));
    Outcome::new(f).count("products", (w.len() as u64).pow(2))
}

fn grading_fuzz<E: Extension>(ext: &E, samples: u64, seed: u64, spread: i64, g: i64) -> Outcome {
    let pool = ext.window(-spread, spread, g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let x = pool[rng.random_range(0..pool.len())];
        let y = pool[rng.random_range(0..pool.len())];
        if let Some(m) = graded(ext, x, y) {
            bad = Some(m);
            break;
        }
    }
    let f = bad.map_or(Finding::Holds(format!("seed {seed}")), Finding::Refuted);
    Outcome::new(f).count("products", samples)
}

fn branch_agreement<G: GroupCarrier>(w: &WarneSystem<G>, lo: i64, hi: i64, g: i64) -> Outcome {
    let win = w.window(lo, hi, g);
    let pairs: Vec<_> = win.iter().flat_map(|&x| win.iter().filter(move |y| y.i == x.j).map(move |&y| (x, y))).collect();
    let bad = pairs
        .par_iter()
        .filter(|&&(x, y)| w.upper_branch(x, y) != w.lower_branch(x, y))
        .min_by_key(|&&(x, y)| (w.sort_key(x), w.sort_key(y)));
    let f = match bad {
        Some(&(x, y)) => Finding::Refuted(format!(
            "{}·{}: upper {} lower {}",
            w.show(x),
            w.show(y),
            w.show(w.upper_branch(x, y)),
            w.show(w.lower_branch(x, y))
        )),
        None => Finding::Holds(String::new()),
    };
    Outcome::new(f).count("pairs", pairs.len())
}

fn oip<C: TopologyCarrier>(c: &C, upto: i64, g: i64) -> Outcome {
    use crate::topology::CarrierFamily;
    let family = match c.family() {
        CarrierFamily::Nat(_) => OipFamily::UpperTails,
        CarrierFamily::Table => OipFamily::all_ideals(c),
        CarrierFamily::Int { .. } => {
            return Outcome::new(Finding::NotApplicable("no ideal family for the integers".into()));
        }
    };
    let sample: Vec<i64> = c.sample(g).into_iter().map(|a| c.code(a)).collect();
    let r = check_oip(c, &family, &sample, upto);
    let f = if r.holds() {
        Finding::Holds(format!("{family}: {}", r.summary()))
    } else if r.undecidable.is_some() {
        Finding::Undecidable(r.summary())
    } else {
        Finding::Refuted(format!("{family}: {}", r.summary()))
    };
    Outcome::new(f).count("ideals", r.ideals).count("sampled", sample.len())
}

fn from_report(r: TopologyReport) -> Outcome {
    let f = if r.undecidable > 0 {
        Finding::Undecidable(r.first_undecidable.clone().unwrap_or_default())
    } else if r.failures > 0 {
        Finding::Exhausted(format!("{} ({})", r.first_failure.clone().unwrap_or_default(), r.schedule))
    } else {
        Finding::Holds(r.witness.clone().unwrap_or_default())
    };
    let mut o = Outcome::new(f).count("checked", r.checked);
    if r.failures > 0 {
        o = o.count("failures", r.failures);
    }
    if r.undecidable > 0 {
        o = o.count("undecidable", r.undecidable);
    }
    o
}

fn topology<C: TopologyCarrier>(c: &C, s: &Suite, check: &Check) -> Outcome {
    let Some(kind) = s.topology else {
        return Outcome::new(Finding::NotApplicable("suite names no topology".into()));
    };
    let t = match TopologySpec::new(kind, c.clone()) {
        Ok(t) => t,
        Err(e) => return Outcome::new(Finding::NotApplicable(e.to_string())),
    };
    let (lo, hi) = s.window;
    let pts = t.points(lo, hi, s.g_bound);
    let sch = t.default_schedule(s.schedule_bound(), s.g_bound);
    match check {
        Check::Hausdorff => from_report(check_hausdorff(&t, &pts, &sch)),
        Check::SeparateContinuity => from_report(check_separate_continuity(&t, &pts, &sch)),
        Check::JointContinuity => from_report(check_joint_continuity(&t, &pts, &sch)),
        Check::InversionContinuity => from_report(check_inversion_continuity(&t, &pts, &sch)),
        Check::RestrictionDiscrete => from_report(check_restriction_discrete(&t, s.g_bound, &sch)),
        Check::Discrete => from_report(is_discrete(&t, &pts, &sch)),
        Check::NbhdLowerset => {
            let mut o = from_report(check_nbhd_lowerset(&t, &pts, &sch));
            if let Finding::Exhausted(w) = o.finding {
                o.finding = Finding::Refuted(w);
            }
            o
        }
        Check::CoarserStrict => {
            let r = check_coarser_strict(&t, &pts, &sch);
            let f = match (&r.undecidable, &r.strict_witness) {
                (Some(u), _) => Finding::Undecidable(u.clone()),
                (None, Some(w)) if r.coarser => Finding::Holds(w.clone()),
                _ => Finding::Refuted(format!("every special point has a singleton base element ({sch})")),
            };
            Outcome::new(f).count("points", pts.len())
        }
        other => Outcome::new(Finding::NotApplicable(format!("{} is not a topology check", other.name()))),
    }
}

fn containments(indices: (i64, i64), tails: (i64, i64), groups: (i64, i64)) -> Outcome {
    match example_3_7_containments(indices.0..=indices.1, tails.0..=tails.1, groups.0..=groups.1) {
        Ok(r) => {
            let f = match r.failures.first() {
                Some(m) => Finding::Refuted(m.clone()),
                None if r.holds() => Finding::Holds("a1 a2 a3 b1 b2 b3 c1 c2 c3".into()),
                None => Finding::Exhausted("some case has no instance in range".into()),
            };
            let mut o = Outcome::new(f);
            for (case, n) in &r.per_case {
                o = o.count(case, *n);
            }
            o
        }
        Err(e) => Outcome::new(Finding::Undecidable(e.to_string())),
    }
}
