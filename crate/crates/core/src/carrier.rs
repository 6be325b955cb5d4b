//! Base monoids `S¹` together with their homomorphism `θ: S¹ → H(1)`.
//!
//! Three families are supported: finite monoids given by a table, the
//! additive group of integers with an endomorphism, and the two discrete
//! monoids on `{0, 1, 2, ...}` under addition and under `max`.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::monoid::{Classification, ElementId, FiniteMonoid, IntGroupEndo, MonoidError, UnitHom};

/// A monoid `S¹` with a homomorphism `θ` into its group of units.
pub trait Carrier: Clone + Send + Sync + fmt::Debug {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn unit(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `θ^n(a)`, with `θ^0` the identity.
    fn theta_pow(&self, n: u64, a: Self::Elem) -> Self::Elem;
    fn contains(&self, a: Self::Elem) -> bool;
    /// All elements for a finite carrier, otherwise those with `|code| <= g_bound`.
    fn sample(&self, g_bound: i64) -> Vec<Self::Elem>;
    fn is_finite(&self) -> bool;
    fn is_unit(&self, a: Self::Elem) -> bool;
    fn is_inverse(&self) -> bool;
    fn is_regular(&self) -> bool;
    /// The inverse-semigroup inverse; `None` unless the carrier is inverse.
    fn inverse(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn theta_is_annihilating(&self) -> bool;
    /// The same monoid with `θ` replaced by the constant-unit map.
    fn annihilated(&self) -> Self;
    /// Integer code used by the symbolic set algebra and the export formats.
    fn code(&self, a: Self::Elem) -> i64;
    fn decode(&self, code: i64) -> Option<Self::Elem>;
    fn describe(&self) -> String;

    fn is_idempotent(&self, a: Self::Elem) -> bool {
        self.mul(a, a) == a
    }
}

/// A carrier that is a group, as required by the `warne` construction.
pub trait GroupCarrier: Carrier {
    /// Whether every element is invertible; `group_inv` may panic otherwise.
    fn is_group(&self) -> bool;
    fn group_inv(&self, a: Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CarrierError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("theta is bound to a different monoid")]
    ForeignTheta,
    #[error("carrier is not a group")]
    NotAGroup,
}

/// A finite table monoid with a validated `θ`.
#[derive(Debug, Clone)]
pub struct TableCarrier {
    monoid: Arc<FiniteMonoid>,
    theta: UnitHom,
    class: Arc<Classification>,
    unit_inv: Arc<Vec<Option<ElementId>>>,
    name: String,
}

impl TableCarrier {
    pub fn new(theta: UnitHom, name: impl Into<String>) -> Result<Self, CarrierError> {
        let check = theta.check();
        if let Some(v) = check.violation {
            return Err(MonoidError::NotUnitHom(v).into());
        }
        let monoid = theta.monoid().clone();
        let class = Arc::new(monoid.classify());
        let unit_inv = Arc::new(monoid.elements().map(|x| monoid.unit_inverse(x)).collect());
        Ok(TableCarrier { monoid, theta, class, unit_inv, name: name.into() })
    }

    pub fn with_annihilating(monoid: FiniteMonoid, name: impl Into<String>) -> Self {
        Self::new(UnitHom::annihilating(Arc::new(monoid)), name).expect("annihilating map is valid")
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn theta(&self) -> &UnitHom {
        &self.theta
    }

    pub fn classification(&self) -> &Classification {
        &self.class
    }

    pub fn is_group(&self) -> bool {
        self.unit_inv.iter().all(Option::is_some)
    }
}

impl Carrier for TableCarrier {
    type Elem = ElementId;

    fn unit(&self) -> ElementId {
        self.monoid.unit()
    }

    #[inline]
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.monoid.mul(a, b)
    }

    #[inline]
    fn theta_pow(&self, n: u64, a: ElementId) -> ElementId {
        self.theta.power_u(n, a)
    }

    fn contains(&self, a: ElementId) -> bool {
        self.monoid.contains(a)
    }

    fn sample(&self, _g_bound: i64) -> Vec<ElementId> {
        self.monoid.elements().collect()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_unit(&self, a: ElementId) -> bool {
        self.unit_inv[a.0].is_some()
    }

    fn is_inverse(&self) -> bool {
        self.class.is_inverse
    }

    fn is_regular(&self) -> bool {
        self.class.is_regular
    }

    fn inverse(&self, a: ElementId) -> Option<ElementId> {
        self.class.inverse_map.as_ref().map(|inv| inv[a.0])
    }

    fn theta_is_annihilating(&self) -> bool {
        self.theta.is_annihilating()
    }

    fn annihilated(&self) -> Self {
        let mut out = self.clone();
        out.theta = UnitHom::annihilating(self.monoid.clone());
        out
    }

    fn code(&self, a: ElementId) -> i64 {
        a.0 as i64
    }

    fn decode(&self, code: i64) -> Option<ElementId> {
        usize::try_from(code).ok().map(ElementId).filter(|&x| self.contains(x))
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

impl GroupCarrier for TableCarrier {
    fn is_group(&self) -> bool {
        TableCarrier::is_group(self)
    }

    fn group_inv(&self, a: ElementId) -> ElementId {
        self.unit_inv[a.0].expect("group carrier element without inverse")
    }
}

/// The additive group `ℤ` with an endomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntCarrier {
    endo: IntGroupEndo,
}

impl IntCarrier {
    pub fn new(endo: IntGroupEndo) -> Self {
        IntCarrier { endo }
    }

    pub fn endo(&self) -> IntGroupEndo {
        self.endo
    }
}

impl Carrier for IntCarrier {
    type Elem = i64;

    fn unit(&self) -> i64 {
        0
    }

    #[inline]
    fn mul(&self, a: i64, b: i64) -> i64 {
        a + b
    }

    #[inline]
    fn theta_pow(&self, n: u64, a: i64) -> i64 {
        self.endo.power(n, a)
    }

    fn contains(&self, _a: i64) -> bool {
        true
    }

    fn sample(&self, g_bound: i64) -> Vec<i64> {
        (-g_bound..=g_bound).collect()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn is_unit(&self, _a: i64) -> bool {
        true
    }

    fn is_inverse(&self) -> bool {
        true
    }

    fn is_regular(&self) -> bool {
        true
    }

    fn inverse(&self, a: i64) -> Option<i64> {
        Some(-a)
    }

    fn theta_is_annihilating(&self) -> bool {
        self.endo.is_annihilating()
    }

    fn annihilated(&self) -> Self {
        IntCarrier { endo: IntGroupEndo::Annihilating }
    }

    fn code(&self, a: i64) -> i64 {
        a
    }

    fn decode(&self, code: i64) -> Option<i64> {
        Some(code)
    }

    fn describe(&self) -> String {
        match self.endo {
            IntGroupEndo::Annihilating => "int-group".into(),
            IntGroupEndo::Scale(c) => format!("int-group[scale {c}]"),
        }
    }
}

impl GroupCarrier for IntCarrier {
    fn is_group(&self) -> bool {
        true
    }

    fn group_inv(&self, a: i64) -> i64 {
        -a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatOp {
    Add,
    Max,
}

/// `{0, 1, 2, ...}` under addition or `max`, unit `0`. The group of units
/// is trivial, so `θ` is necessarily annihilating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NatCarrier {
    op: NatOp,
}

impl NatCarrier {
    pub fn new(op: NatOp) -> Self {
        NatCarrier { op }
    }

    pub fn op(&self) -> NatOp {
        self.op
    }
}

impl Carrier for NatCarrier {
    type Elem = i64;

    fn unit(&self) -> i64 {
        0
    }

    #[inline]
    fn mul(&self, a: i64, b: i64) -> i64 {
        match self.op {
            NatOp::Add => a + b,
            NatOp::Max => a.max(b),
        }
    }

    #[inline]
    fn theta_pow(&self, n: u64, a: i64) -> i64 {
        if n == 0 {
            a
        } else {
            0
        }
    }

    fn contains(&self, a: i64) -> bool {
        a >= 0
    }

    fn sample(&self, g_bound: i64) -> Vec<i64> {
        (0..=g_bound.max(0)).collect()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn is_unit(&self, a: i64) -> bool {
        a == 0
    }

    fn is_inverse(&self) -> bool {
        self.op == NatOp::Max
    }

    fn is_regular(&self) -> bool {
        self.op == NatOp::Max
    }

    fn inverse(&self, a: i64) -> Option<i64> {
        (self.op == NatOp::Max).then_some(a)
    }

    fn theta_is_annihilating(&self) -> bool {
        true
    }

    fn annihilated(&self) -> Self {
        *self
    }

    fn code(&self, a: i64) -> i64 {
        a
    }

    fn decode(&self, code: i64) -> Option<i64> {
        (code >= 0).then_some(code)
    }

    fn describe(&self) -> String {
        match self.op {
            NatOp::Add => "nplus".into(),
            NatOp::Max => "nmax".into(),
        }
    }
}
