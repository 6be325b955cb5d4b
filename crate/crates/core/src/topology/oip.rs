use std::collections::BTreeSet;

use super::descriptor::{SetDescriptor, SymbolicCarrier};
use super::pointset::PointSet;
use super::show_codes;

/// A family of open ideals `{I_α}` indexed by integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OipFamily {
    /// `I_α = {k : k >= α}` for `α >= 1`, on `{0, 1, 2, ...}`.
    UpperTails,
    /// Explicit finite ideals, `α` the list index.
    Listed(Vec<BTreeSet<i64>>),
}

impl OipFamily {
    pub fn ideal(&self, alpha: i64) -> Option<SetDescriptor> {
        match self {
            OipFamily::UpperTails => (alpha >= 1).then_some(SetDescriptor::UpperTail(alpha)),
            OipFamily::Listed(v) => usize::try_from(alpha).ok().and_then(|a| v.get(a)).cloned().map(SetDescriptor::Explicit),
        }
    }

    pub fn alphas(&self, upto: i64) -> Vec<i64> {
        match self {
            OipFamily::UpperTails => (1..=upto).collect(),
            OipFamily::Listed(v) => (0..v.len() as i64).collect(),
        }
    }

    /// An index `α` and a neighbourhood of `k` missing `I_α`.
    pub fn witness<C: SymbolicCarrier>(&self, c: &C, k: i64) -> Option<(i64, SetDescriptor)> {
        let nb = SetDescriptor::point(k);
        match self {
            OipFamily::UpperTails => Some((k.max(0) + 1, nb)),
            OipFamily::Listed(v) => (0..v.len() as i64)
                .find(|&a| nb.disjoint(&self.ideal(a).unwrap(), c).unwrap_or(false))
                .map(|a| (a, nb)),
        }
    }

    /// Every nonempty two-sided ideal of a finite carrier, smallest first.
    pub fn all_ideals<C: SymbolicCarrier>(c: &C) -> Self {
        let codes = c.universe().elements().unwrap_or_default();
        assert!(codes.len() <= 16, "ideal enumeration needs a small carrier");
        let mut out = Vec::new();
        for mask in 1u32..(1 << codes.len()) {
            let set: BTreeSet<i64> =
                codes.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &k)| k).collect();
            let absorbs = set.iter().all(|&a| {
                codes.iter().all(|&s| {
                    let (a, s) = (c.decode(a).unwrap(), c.decode(s).unwrap());
                    set.contains(&c.code(c.mul(a, s))) && set.contains(&c.code(c.mul(s, a)))
                })
            });
            if absorbs {
                out.push(set);
            }
        }
        out.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        OipFamily::Listed(out)
    }
}

#[derive(Debug, Clone)]
pub struct OipReport {
    pub ideals: usize,
    /// First `α` whose set fails to absorb the carrier.
    pub not_ideal: Option<i64>,
    /// First sampled element without a witness.
    pub missing_witness: Option<i64>,
    pub witnesses: Vec<(i64, i64)>,
    /// A subfamily of at most three ideals with empty intersection.
    pub fip_failure: Option<Vec<i64>>,
    pub undecidable: Option<String>,
}

impl OipReport {
    pub fn holds(&self) -> bool {
        self.ideals > 0
            && self.not_ideal.is_none()
            && self.missing_witness.is_none()
            && self.fip_failure.is_none()
            && self.undecidable.is_none()
    }

    pub fn summary(&self) -> String {
        if let Some(a) = self.not_ideal {
            return format!("I_{a} is not an ideal");
        }
        if let Some(k) = self.missing_witness {
            return format!("no ideal avoids a neighbourhood of {k}");
        }
        if let Some(f) = &self.fip_failure {
            return format!("empty intersection of ideals {f:?}");
        }
        if let Some(u) = &self.undecidable {
            return u.clone();
        }
        let shown: Vec<String> = self.witnesses.iter().take(4).map(|(k, a)| format!("{k}∉I_{a}")).collect();
        format!("{} ideals; {}", self.ideals, shown.join(" "))
    }
}

/// Absorption of each ideal, a witness for each sampled element, and the
/// finite intersection property on subfamilies of size up to three.
pub fn check_oip<C: SymbolicCarrier>(c: &C, family: &OipFamily, sample: &[i64], upto: i64) -> OipReport {
    let alphas = family.alphas(upto);
    let mut report = OipReport {
        ideals: alphas.len(),
        not_ideal: None,
        missing_witness: None,
        witnesses: Vec::new(),
        fip_failure: None,
        undecidable: None,
    };
    let u = c.universe();
    let mut sets = Vec::new();
    for &a in &alphas {
        let set = match family.ideal(a).unwrap().normalize(c) {
            Ok(s) => s,
            Err(e) => {
                report.undecidable = Some(e.to_string());
                return report;
            }
        };
        let absorbed = c.set_mul(&set, &u).and_then(|l| Ok((l, c.set_mul(&u, &set)?)));
        match absorbed {
            Ok((l, r)) if l.is_subset(&set) && r.is_subset(&set) && !set.is_empty() => {}
            Ok(_) => {
                report.not_ideal.get_or_insert(a);
            }
            Err(e) => report.undecidable = Some(e.to_string()),
        }
        sets.push(set);
    }
    for &k in sample {
        match family.witness(c, k) {
            Some((a, nb)) if nb.disjoint(&family.ideal(a).unwrap(), c).unwrap_or(false) => {
                report.witnesses.push((k, a))
            }
            _ => {
                report.missing_witness.get_or_insert(k);
            }
        }
    }
    let n = sets.len();
    'fip: for a in 0..n {
        for b in a..n {
            for d in b..n {
                let meet: PointSet = sets[a].intersect(&sets[b]).intersect(&sets[d]);
                if meet.is_empty() {
                    let mut f = vec![alphas[a], alphas[b], alphas[d]];
                    f.dedup();
                    report.fip_failure = Some(f);
                    break 'fip;
                }
            }
        }
    }
    report
}

impl std::fmt::Display for OipFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OipFamily::UpperTails => write!(f, "upper tails"),
            OipFamily::Listed(v) => {
                let parts: Vec<String> = v.iter().map(show_codes).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}
