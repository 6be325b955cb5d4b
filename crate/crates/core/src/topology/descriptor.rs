use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::pointset::PointSet;
use super::TopologyError;
use crate::carrier::{Carrier, IntCarrier, NatCarrier, NatOp, TableCarrier};
use crate::monoid::IntGroupEndo;

/// A set of carrier elements, by integer code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetDescriptor {
    Explicit(BTreeSet<i64>),
    /// `{k : k >= n}`.
    UpperTail(i64),
    /// `{k : k <= n}`.
    LowerTail(i64),
    /// `{k : k <= -n or k >= n}`, `n >= 0`.
    TwoSidedTail(i64),
    /// `θ⁻¹(inner)`.
    Preimage(Box<SetDescriptor>),
    Intersect(Vec<SetDescriptor>),
    Union(Vec<SetDescriptor>),
    Full,
    Empty,
}

impl SetDescriptor {
    pub fn point(k: i64) -> Self {
        SetDescriptor::Explicit(BTreeSet::from([k]))
    }

    /// Direct evaluation of the defining predicate.
    pub fn member<C: SymbolicCarrier>(&self, c: &C, k: i64) -> bool {
        c.universe().contains(k) && self.holds(c, k)
    }

    fn holds<C: SymbolicCarrier>(&self, c: &C, k: i64) -> bool {
        match self {
            SetDescriptor::Explicit(s) => s.contains(&k),
            SetDescriptor::UpperTail(n) => k >= *n,
            SetDescriptor::LowerTail(n) => k <= *n,
            SetDescriptor::TwoSidedTail(n) => k <= -n || k >= *n,
            SetDescriptor::Preimage(inner) => inner.member(c, c.theta_code(1, k)),
            SetDescriptor::Intersect(ds) => ds.iter().all(|d| d.holds(c, k)),
            SetDescriptor::Union(ds) => ds.iter().any(|d| d.holds(c, k)),
            SetDescriptor::Full => true,
            SetDescriptor::Empty => false,
        }
    }

    /// The interval-set normal form, intersected with the carrier.
    pub fn normalize<C: SymbolicCarrier>(&self, c: &C) -> Result<PointSet, TopologyError> {
        let raw = match self {
            SetDescriptor::Explicit(s) => PointSet::points(s.iter().copied()),
            SetDescriptor::UpperTail(n) => PointSet::upper(*n),
            SetDescriptor::LowerTail(n) => PointSet::lower(*n),
            SetDescriptor::TwoSidedTail(n) => PointSet::lower(-n).union(&PointSet::upper(*n)),
            SetDescriptor::Preimage(inner) => c.set_theta_preimage(&inner.normalize(c)?)?,
            SetDescriptor::Intersect(ds) => {
                let mut acc = PointSet::full();
                for d in ds {
                    acc = acc.intersect(&d.normalize(c)?);
                }
                acc
            }
            SetDescriptor::Union(ds) => {
                let mut acc = PointSet::empty();
                for d in ds {
                    acc = acc.union(&d.normalize(c)?);
                }
                acc
            }
            SetDescriptor::Full => PointSet::full(),
            SetDescriptor::Empty => PointSet::empty(),
        };
        Ok(raw.intersect(&c.universe()))
    }

    pub fn subset<C: SymbolicCarrier>(&self, other: &Self, c: &C) -> Result<bool, TopologyError> {
        Ok(self.normalize(c)?.is_subset(&other.normalize(c)?))
    }

    pub fn disjoint<C: SymbolicCarrier>(&self, other: &Self, c: &C) -> Result<bool, TopologyError> {
        Ok(self.normalize(c)?.is_disjoint(&other.normalize(c)?))
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[SetDescriptor], sep: &str| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            SetDescriptor::Explicit(s) => {
                write!(f, "{{{}}}", s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
            }
            SetDescriptor::UpperTail(n) => write!(f, "k>={n}"),
            SetDescriptor::LowerTail(n) => write!(f, "k<={n}"),
            SetDescriptor::TwoSidedTail(n) => write!(f, "|k|>={n}"),
            SetDescriptor::Preimage(inner) => write!(f, "θ⁻¹({inner})"),
            SetDescriptor::Intersect(ds) => write!(f, "({})", join(ds, " ∩ ")),
            SetDescriptor::Union(ds) => write!(f, "({})", join(ds, " ∪ ")),
            SetDescriptor::Full => write!(f, "S"),
            SetDescriptor::Empty => write!(f, "∅"),
        }
    }
}

/// Set-level arithmetic on a carrier's element codes. Operations that would
/// leave interval sets answer with [`TopologyError::UndecidableForm`].
pub trait SymbolicCarrier: Carrier {
    /// All element codes.
    fn universe(&self) -> PointSet;
    /// `θ^n` on codes.
    fn theta_code(&self, n: u64, k: i64) -> i64;
    /// `{a·b : a ∈ x, b ∈ y}`.
    fn set_mul(&self, x: &PointSet, y: &PointSet) -> Result<PointSet, TopologyError>;
    /// `θ^n(x)`.
    fn set_theta_pow(&self, n: u64, x: &PointSet) -> Result<PointSet, TopologyError>;
    /// `θ⁻¹(x)`.
    fn set_theta_preimage(&self, x: &PointSet) -> Result<PointSet, TopologyError>;
    /// `{a⁻¹ : a ∈ x}`.
    fn set_inverse(&self, x: &PointSet) -> Result<PointSet, TopologyError>;
    fn unit_code(&self) -> i64 {
        self.code(self.unit())
    }
}

fn finite_elems(x: &PointSet, what: &str) -> Result<Vec<i64>, TopologyError> {
    x.elements().ok_or_else(|| TopologyError::UndecidableForm(format!("{what} of infinite set {x}")))
}

impl SymbolicCarrier for TableCarrier {
    fn universe(&self) -> PointSet {
        PointSet::range(0, self.monoid().size() as i64 - 1)
    }

    fn theta_code(&self, n: u64, k: i64) -> i64 {
        self.decode(k).map_or(k, |a| self.code(self.theta_pow(n, a)))
    }

    fn set_mul(&self, x: &PointSet, y: &PointSet) -> Result<PointSet, TopologyError> {
        let (xs, ys) = (finite_elems(x, "product")?, finite_elems(y, "product")?);
        let mut out = BTreeSet::new();
        for &a in &xs {
            for &b in &ys {
                if let (Some(a), Some(b)) = (self.decode(a), self.decode(b)) {
                    out.insert(self.code(self.mul(a, b)));
                }
            }
        }
        Ok(PointSet::points(out))
    }

    fn set_theta_pow(&self, n: u64, x: &PointSet) -> Result<PointSet, TopologyError> {
        let xs = finite_elems(x, "θ-image")?;
        Ok(PointSet::points(xs.into_iter().map(|k| self.theta_code(n, k))))
    }

    fn set_theta_preimage(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        let u = finite_elems(&self.universe(), "θ-preimage")?;
        Ok(PointSet::points(u.into_iter().filter(|&k| x.contains(self.theta_code(1, k)))))
    }

    fn set_inverse(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        let xs = finite_elems(x, "inverse")?;
        let mut out = BTreeSet::new();
        for k in xs {
            let a = self.decode(k).ok_or(TopologyError::NotInverse)?;
            out.insert(self.code(self.inverse(a).ok_or(TopologyError::NotInverse)?));
        }
        Ok(PointSet::points(out))
    }
}

// θ^n = ×c^n on ℤ; annihilating is c = 0.
fn int_factor(endo: IntGroupEndo, n: u64) -> Option<i64> {
    match endo {
        IntGroupEndo::Annihilating => Some(if n == 0 { 1 } else { 0 }),
        IntGroupEndo::Scale(c) => c.checked_pow(u32::try_from(n).ok()?),
    }
}

impl SymbolicCarrier for IntCarrier {
    fn universe(&self) -> PointSet {
        PointSet::full()
    }

    fn theta_code(&self, n: u64, k: i64) -> i64 {
        self.theta_pow(n, k)
    }

    fn set_mul(&self, x: &PointSet, y: &PointSet) -> Result<PointSet, TopologyError> {
        Ok(x.sum(y))
    }

    fn set_theta_pow(&self, n: u64, x: &PointSet) -> Result<PointSet, TopologyError> {
        if x.is_empty() {
            return Ok(PointSet::empty());
        }
        match int_factor(self.endo(), n) {
            Some(0) => Ok(PointSet::point(0)),
            Some(1) => Ok(x.clone()),
            Some(-1) => Ok(x.negate()),
            Some(c) => {
                let xs = finite_elems(x, "θ-image")?;
                Ok(PointSet::points(xs.into_iter().map(|k| c * k)))
            }
            None => Err(TopologyError::UndecidableForm(format!("θ^{n} overflows"))),
        }
    }

    fn set_theta_preimage(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        match int_factor(self.endo(), 1) {
            Some(0) => Ok(if x.contains(0) { PointSet::full() } else { PointSet::empty() }),
            Some(1) => Ok(x.clone()),
            Some(-1) => Ok(x.negate()),
            Some(c) => {
                let xs = finite_elems(x, "θ-preimage")?;
                Ok(PointSet::points(xs.into_iter().filter(|k| k % c == 0).map(|k| k / c)))
            }
            None => Err(TopologyError::UndecidableForm("θ overflows".into())),
        }
    }

    fn set_inverse(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        Ok(x.negate())
    }
}

impl SymbolicCarrier for NatCarrier {
    fn universe(&self) -> PointSet {
        PointSet::upper(0)
    }

    fn theta_code(&self, n: u64, k: i64) -> i64 {
        self.theta_pow(n, k)
    }

    fn set_mul(&self, x: &PointSet, y: &PointSet) -> Result<PointSet, TopologyError> {
        let u = self.universe();
        let (x, y) = (x.intersect(&u), y.intersect(&u));
        Ok(match self.op() {
            NatOp::Add => x.sum(&y),
            NatOp::Max => x.max_combine(&y),
        })
    }

    fn set_theta_pow(&self, n: u64, x: &PointSet) -> Result<PointSet, TopologyError> {
        let x = x.intersect(&self.universe());
        Ok(if n == 0 || x.is_empty() { x } else { PointSet::point(0) })
    }

    fn set_theta_preimage(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        Ok(if x.contains(0) { self.universe() } else { PointSet::empty() })
    }

    fn set_inverse(&self, x: &PointSet) -> Result<PointSet, TopologyError> {
        match self.op() {
            NatOp::Max => Ok(x.intersect(&self.universe())),
            NatOp::Add => Err(TopologyError::NotInverse),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::monoid::{builtin, ElementId, UnitHom};
    use proptest::prelude::*;

    fn arb_descriptor() -> impl Strategy<Value = SetDescriptor> {
        let leaf = prop_oneof![
            proptest::collection::btree_set(-10i64..10, 0..4).prop_map(SetDescriptor::Explicit),
            (-10i64..10).prop_map(SetDescriptor::UpperTail),
            (-10i64..10).prop_map(SetDescriptor::LowerTail),
            (0i64..10).prop_map(SetDescriptor::TwoSidedTail),
            Just(SetDescriptor::Full),
            Just(SetDescriptor::Empty),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(|d| SetDescriptor::Preimage(Box::new(d))),
                proptest::collection::vec(inner.clone(), 1..3).prop_map(SetDescriptor::Intersect),
                proptest::collection::vec(inner, 1..3).prop_map(SetDescriptor::Union),
            ]
        })
    }

    fn check_sound<C: SymbolicCarrier>(c: &C, a: &SetDescriptor, b: &SetDescriptor) -> Result<(), TestCaseError> {
        let (na, nb) = (a.normalize(c).unwrap(), b.normalize(c).unwrap());
        for k in -20..=20 {
            prop_assert_eq!(na.contains(k), a.member(c, k), "k = {}", k);
        }
        // Every descriptor here changes only inside [-20, 20] or is a tail,
        // so sampled disagreement with the decision is a real error.
        let sampled_subset = (-20..=20).all(|k| !a.member(c, k) || b.member(c, k));
        if a.subset(b, c).unwrap() {
            prop_assert!(sampled_subset);
        }
        let sampled_disjoint = (-20..=20).all(|k| !(a.member(c, k) && b.member(c, k)));
        if a.disjoint(b, c).unwrap() {
            prop_assert!(sampled_disjoint);
        }
        prop_assert_eq!(na.is_subset(&nb), a.subset(b, c).unwrap());
        Ok(())
    }

    proptest! {
        #[test]
        fn normal_form_matches_predicate(a in arb_descriptor(), b in arb_descriptor()) {
            check_sound(&IntCarrier::new(IntGroupEndo::Annihilating), &a, &b)?;
            check_sound(&IntCarrier::new(IntGroupEndo::Scale(-1)), &a, &b)?;
            check_sound(&NatCarrier::new(NatOp::Max), &a, &b)?;
            check_sound(&TableCarrier::with_annihilating(builtin::chain3(), "chain3"), &a, &b)?;
        }
    }

    #[test]
    fn stated_cases() {
        let z = IntCarrier::new(IntGroupEndo::Annihilating);
        let ut = SetDescriptor::UpperTail;
        assert!(ut(5).subset(&ut(3), &z).unwrap());
        assert!(!ut(3).subset(&ut(5), &z).unwrap());
        let tst = SetDescriptor::TwoSidedTail;
        assert!(tst(4).subset(&tst(2), &z).unwrap());
        assert!(tst(4).disjoint(&SetDescriptor::Explicit([0, 1, 2, 3, -3].into()), &z).unwrap());
        assert!(!SetDescriptor::Full.subset(&ut(-100), &z).unwrap());
        let pre = SetDescriptor::Preimage(Box::new(SetDescriptor::point(0)));
        assert_eq!(pre.normalize(&z).unwrap(), PointSet::full());
        let pre = SetDescriptor::Preimage(Box::new(SetDescriptor::point(3)));
        assert_eq!(pre.normalize(&z).unwrap(), PointSet::empty());
    }

    #[test]
    fn scale_two_refuses_infinite_images() {
        let z = IntCarrier::new(IntGroupEndo::Scale(2));
        assert!(matches!(z.set_theta_pow(1, &PointSet::upper(3)), Err(TopologyError::UndecidableForm(_))));
        assert_eq!(z.set_theta_pow(2, &PointSet::points([1, 2])).unwrap(), PointSet::points([4, 8]));
        assert_eq!(z.set_theta_preimage(&PointSet::points([3, 4])).unwrap(), PointSet::point(2));
    }

    #[test]
    fn table_sets() {
        let c2 = Arc::new(builtin::cyclic(2));
        let c = TableCarrier::new(UnitHom::identity(c2), "c2").unwrap();
        assert_eq!(c.set_mul(&PointSet::point(1), &PointSet::point(1)).unwrap(), PointSet::point(0));
        assert_eq!(c.set_theta_preimage(&PointSet::point(1)).unwrap(), PointSet::point(1));
        assert_eq!(c.unit_code(), 0);
        let lz = TableCarrier::with_annihilating(builtin::leftzero2_plus_one(), "lz");
        assert_eq!(lz.unit_code(), ElementId(2).0 as i64);
        assert_eq!(lz.set_inverse(&PointSet::point(0)), Err(TopologyError::NotInverse));
    }
}
