//! Neighbourhood bases on `B(S,ℤ,θ)` described symbolically, and exact
//! decision procedures for the containments that continuity and separation
//! reduce to.
//!
//! A base element is a finite union of layers `(i, D, j)` where `D` is a
//! [`SetDescriptor`] over the carrier. All carriers here are discrete, so
//! every layer is open in the direct sum topology.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{Carrier, IntCarrier, NatCarrier, NatOp, TableCarrier};
use crate::extensions::ExtElement;

mod checks;
mod descriptor;
mod example37;
mod oip;
mod pointset;
mod symset;

pub use checks::{
    applicable_kinds, check_coarser_strict, check_hausdorff, check_inversion_continuity, check_joint_continuity,
    check_nbhd_lowerset, check_restriction_discrete, check_separate_continuity, is_discrete, CoarserReport,
    TopologyReport,
};
pub use descriptor::{SetDescriptor, SymbolicCarrier};
pub use example37::{example_3_7_containments, ContainmentReport};
pub use oip::{check_oip, OipFamily, OipReport};
pub use pointset::{Interval, PointSet};
pub use symset::{Point, SymSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("undecidable form: {0}")]
    UndecidableForm(String),
    #[error("parameter {param} is out of range for {kind}")]
    BadParam { kind: TopologyKind, param: i64 },
    #[error("{kind} does not apply to carrier {carrier}")]
    NotApplicable { kind: TopologyKind, carrier: String },
    #[error("carrier is not an inverse monoid")]
    NotInverse,
}

/// Which family of base neighbourhoods a topology uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyKind {
    DirectSum,
    Coarsened,
    #[serde(rename = "example-2.7")]
    Example2_7,
    #[serde(rename = "example-2.8")]
    Example2_8,
    #[serde(rename = "example-3.7")]
    Example3_7,
    #[serde(rename = "example-3.9")]
    Example3_9,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 6] = [
        TopologyKind::DirectSum,
        TopologyKind::Coarsened,
        TopologyKind::Example2_7,
        TopologyKind::Example2_8,
        TopologyKind::Example3_7,
        TopologyKind::Example3_9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::DirectSum => "direct-sum",
            TopologyKind::Coarsened => "coarsened",
            TopologyKind::Example2_7 => "example-2.7",
            TopologyKind::Example2_8 => "example-2.8",
            TopologyKind::Example3_7 => "example-3.7",
            TopologyKind::Example3_9 => "example-3.9",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coarse classification of a carrier, enough to decide which topologies
/// apply to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierFamily {
    Table,
    /// `ℤ`, flagged when `θ` is annihilating.
    Int { annihilating: bool },
    Nat(NatOp),
}

pub trait TopologyCarrier: SymbolicCarrier {
    fn family(&self) -> CarrierFamily;
}

impl TopologyCarrier for TableCarrier {
    fn family(&self) -> CarrierFamily {
        CarrierFamily::Table
    }
}

impl TopologyCarrier for IntCarrier {
    fn family(&self) -> CarrierFamily {
        CarrierFamily::Int { annihilating: self.theta_is_annihilating() }
    }
}

impl TopologyCarrier for NatCarrier {
    fn family(&self) -> CarrierFamily {
        CarrierFamily::Nat(self.op())
    }
}

/// A base element: a union of layers around an anchor point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseNbhd {
    pub anchor: Point,
    pub layers: Vec<(i64, SetDescriptor, i64)>,
}

impl BaseNbhd {
    pub fn atom(x: Point) -> Self {
        BaseNbhd { anchor: x, layers: vec![(x.i, SetDescriptor::point(x.s), x.j)] }
    }

    pub fn member<C: SymbolicCarrier>(&self, c: &C, x: Point) -> bool {
        self.layers.iter().any(|(i, d, j)| (*i, *j) == (x.i, x.j) && d.member(c, x.s))
    }

    pub fn normalize<C: SymbolicCarrier>(&self, c: &C) -> Result<SymSet, TopologyError> {
        let mut out = SymSet::empty();
        for (i, d, j) in &self.layers {
            out.insert(*i, d.normalize(c)?, *j);
        }
        Ok(out)
    }
}

impl fmt::Display for BaseNbhd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.layers.iter().map(|(i, d, j)| format!("({i},{d},{j})")).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// Parameters to try: `target` for the neighbourhood `W` of a product or
/// image, `source` for the neighbourhoods searched for. Both are listed from
/// the largest base element to the smallest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub target: Vec<i64>,
    pub source: Vec<i64>,
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let span = |v: &[i64]| match (v.first(), v.last()) {
            (Some(a), Some(b)) => format!("{a}..{b}"),
            _ => "none".into(),
        };
        write!(f, "target {} source {}", span(&self.target), span(&self.source))
    }
}

/// A topology on `B(S,ℤ,θ)` over a discrete carrier.
#[derive(Debug, Clone)]
pub struct TopologySpec<C> {
    kind: TopologyKind,
    carrier: C,
    family: Option<OipFamily>,
}

impl<C: TopologyCarrier> TopologySpec<C> {
    /// Checks that the kind is defined for this carrier. The coarsened kind
    /// takes upper tails on `ℕ` and all nonempty ideals on a finite carrier,
    /// and requires that family to have the open ideal property.
    pub fn new(kind: TopologyKind, carrier: C) -> Result<Self, TopologyError> {
        let fam = carrier.family();
        let refuse = || TopologyError::NotApplicable { kind, carrier: carrier.describe() };
        let family = match kind {
            TopologyKind::DirectSum => None,
            TopologyKind::Example2_7 if fam == CarrierFamily::Nat(NatOp::Add) => None,
            TopologyKind::Example2_8 if fam == CarrierFamily::Nat(NatOp::Max) => None,
            TopologyKind::Example3_7 | TopologyKind::Example3_9
                if fam == (CarrierFamily::Int { annihilating: true }) =>
            {
                None
            }
            TopologyKind::Coarsened => {
                let family = match fam {
                    CarrierFamily::Nat(_) => OipFamily::UpperTails,
                    CarrierFamily::Table => OipFamily::all_ideals(&carrier),
                    CarrierFamily::Int { .. } => return Err(refuse()),
                };
                let sample: Vec<i64> = carrier.sample(4).into_iter().map(|a| carrier.code(a)).collect();
                if !check_oip(&carrier, &family, &sample, 8).holds() {
                    return Err(refuse());
                }
                Some(family)
            }
            _ => return Err(refuse()),
        };
        Ok(TopologySpec { kind, carrier, family })
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn carrier(&self) -> &C {
        &self.carrier
    }

    pub fn family(&self) -> Option<&OipFamily> {
        self.family.as_ref()
    }

    /// Window points `(i, s, j)` with `s` from the carrier sample.
    pub fn points(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Point> {
        let sample: Vec<i64> = self.carrier.sample(g_bound).into_iter().map(|a| self.carrier.code(a)).collect();
        (lo..=hi)
            .flat_map(|i| (lo..=hi).map(move |j| (i, j)))
            .flat_map(|(i, j)| sample.iter().map(move |&s| ExtElement::new(i, s, j)))
            .collect()
    }

    pub fn param_ok(&self, p: i64) -> bool {
        match self.kind {
            TopologyKind::DirectSum | TopologyKind::Example3_7 => true,
            TopologyKind::Example2_7 | TopologyKind::Example2_8 => p >= 1,
            TopologyKind::Example3_9 => p >= 0,
            TopologyKind::Coarsened => self.family.as_ref().is_some_and(|f| f.ideal(p).is_some()),
        }
    }

    /// Whether the point carries the non-trivial base of its kind.
    pub fn is_special(&self, x: Point) -> bool {
        match self.kind {
            TopologyKind::DirectSum => false,
            TopologyKind::Coarsened => self.carrier.decode(x.s).is_some_and(|a| self.carrier.is_unit(a)),
            _ => x.s == self.carrier.unit_code(),
        }
    }

    /// The base element at `x` for parameter `p`.
    pub fn base_at(&self, x: Point, p: i64) -> Result<BaseNbhd, TopologyError> {
        if !self.param_ok(p) {
            return Err(TopologyError::BadParam { kind: self.kind, param: p });
        }
        if !self.is_special(x) {
            return Ok(BaseNbhd::atom(x));
        }
        let lower = match self.kind {
            TopologyKind::Example2_7 | TopologyKind::Example2_8 | TopologyKind::Example3_7 => {
                SetDescriptor::UpperTail(p)
            }
            TopologyKind::Example3_9 => SetDescriptor::TwoSidedTail(p),
            TopologyKind::Coarsened => {
                let ideal = self.family.as_ref().and_then(|f| f.ideal(p)).expect("checked by param_ok");
                SetDescriptor::Intersect(vec![SetDescriptor::Preimage(Box::new(SetDescriptor::point(x.s))), ideal])
            }
            TopologyKind::DirectSum => unreachable!("direct sum points are never special"),
        };
        let mut base = BaseNbhd::atom(x);
        base.layers.push((x.i - 1, lower, x.j - 1));
        Ok(base)
    }

    pub fn nbhd(&self, x: Point, p: i64) -> Result<SymSet, TopologyError> {
        self.base_at(x, p)?.normalize(&self.carrier)
    }

    /// Default parameters: targets up to `bound + 4`, sources up to twice
    /// that plus `g_bound`, so shifts by sampled group elements are covered.
    pub fn default_schedule(&self, bound: i64, g_bound: i64) -> Schedule {
        let t = bound.abs() + 4;
        let s = 2 * t + g_bound.abs();
        match self.kind {
            TopologyKind::DirectSum => Schedule { target: vec![0], source: vec![0] },
            TopologyKind::Example2_7 | TopologyKind::Example2_8 => {
                Schedule { target: (1..=t).collect(), source: (1..=s).collect() }
            }
            TopologyKind::Example3_7 => Schedule { target: (-t..=t).collect(), source: (-s..=s).collect() },
            TopologyKind::Example3_9 => Schedule { target: (0..=t).collect(), source: (0..=s).collect() },
            TopologyKind::Coarsened => match &self.family {
                Some(OipFamily::Listed(ideals)) => {
                    let all: Vec<i64> = (0..ideals.len() as i64).collect();
                    Schedule { target: all.clone(), source: all }
                }
                _ => Schedule { target: (1..=t).collect(), source: (1..=s).collect() },
            },
        }
    }

    /// `x·y` for concrete points.
    pub fn mul(&self, x: Point, y: Point) -> Result<Point, TopologyError> {
        let p = SymSet::point(x).product(&SymSet::point(y), &self.carrier)?;
        Ok(p.pick().expect("product of points is a point"))
    }

    pub fn inverse(&self, x: Point) -> Result<Point, TopologyError> {
        let p = SymSet::point(x).inverse(&self.carrier)?;
        p.pick().ok_or(TopologyError::NotInverse)
    }
}

/// Element codes of a finite set, for display.
pub(crate) fn show_codes(s: &BTreeSet<i64>) -> String {
    format!("{{{}}}", s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{builtin, IntGroupEndo};

    #[test]
    fn example_bases() {
        let t = TopologySpec::new(TopologyKind::Example2_7, NatCarrier::new(NatOp::Add)).unwrap();
        let u = t.base_at(ExtElement::new(0, 0, 0), 3).unwrap();
        let c = t.carrier();
        assert!(u.member(c, ExtElement::new(-1, 5, -1)));
        assert!(!u.member(c, ExtElement::new(-1, 2, -1)));
        assert!(u.member(c, u.anchor));
        assert_eq!(t.base_at(ExtElement::new(1, 4, 2), 3).unwrap(), BaseNbhd::atom(ExtElement::new(1, 4, 2)));
        assert!(t.base_at(ExtElement::new(0, 0, 0), 0).is_err());

        let z = IntCarrier::new(IntGroupEndo::Annihilating);
        let t = TopologySpec::new(TopologyKind::Example3_9, z).unwrap();
        let u = t.base_at(ExtElement::new(0, 0, 0), 2).unwrap();
        assert_eq!(u.to_string(), "(0,{0},0) ∪ (-1,|k|>=2,-1)");

        let ds = TopologySpec::new(TopologyKind::DirectSum, TableCarrier::with_annihilating(builtin::semilattice2(), "s"))
            .unwrap();
        assert!(!ds.base_at(ExtElement::new(0, 1, 0), 0).unwrap().member(ds.carrier(), ExtElement::new(0, 1, 1)));
    }

    #[test]
    fn coarsened_base_shape() {
        let t = TopologySpec::new(TopologyKind::Coarsened, NatCarrier::new(NatOp::Max)).unwrap();
        let n = t.nbhd(ExtElement::new(2, 0, 1), 3).unwrap();
        assert_eq!(n.at(2, 1), PointSet::point(0));
        assert_eq!(n.at(1, 0), PointSet::upper(3));
    }

    #[test]
    fn applicability() {
        let z = IntCarrier::new(IntGroupEndo::Scale(-1));
        assert!(TopologySpec::new(TopologyKind::Example3_7, z).is_err());
        let sl = TableCarrier::with_annihilating(builtin::semilattice2(), "semilattice2");
        assert!(TopologySpec::new(TopologyKind::Coarsened, sl).is_err());
        assert!(TopologySpec::new(TopologyKind::Example2_8, NatCarrier::new(NatOp::Add)).is_err());
    }
}
