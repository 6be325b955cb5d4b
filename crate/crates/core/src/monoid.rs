//! Finite monoids given by multiplication tables, their units, idempotents
//! and inverse/regular/Clifford classification, together with homomorphisms
//! into the group of units and endomorphisms of the additive integers.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest exponent kept in the precomputed power table of a [`UnitHom`].
pub const POWER_CACHE_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("empty monoid: a monoid needs at least its unit")]
    Empty,
    #[error("table has {rows} rows of lengths {lens:?}, expected a {size}x{size} square")]
    NotSquare { size: usize, rows: usize, lens: Vec<usize> },
    #[error("table entry {value} at ({row},{col}) is out of range for size {size}")]
    OutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("element {element} is not in the unit's row/column: {unit} is not a two-sided identity")]
    NotIdentity { unit: usize, element: usize },
    #[error("associativity fails at ({x}*{y})*{z} = {left} != {right} = {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize, left: usize, right: usize },
    #[error("element index {index} out of range for size {size}")]
    BadElement { index: usize, size: usize },
    #[error("negative power {0} of an endomorphism")]
    NegativePower(i64),
    #[error("element {0} is not an idempotent")]
    NotIdempotent(usize),
    #[error("homomorphism image has length {got}, expected {expected}")]
    ImageLength { got: usize, expected: usize },
    #[error("not a valid homomorphism into the group of units: {0}")]
    NotUnitHom(HomViolation),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Index of an element inside its parent [`FiniteMonoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A monoid on `0..size` whose product is a lookup into a validated table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
    unit: usize,
}

impl FiniteMonoid {
    /// Builds a monoid from its table rows, checking closure, the identity
    /// laws and associativity over every triple.
    pub fn new(rows: Vec<Vec<usize>>, unit: usize) -> Result<Self, MonoidError> {
        let size = rows.len();
        if size == 0 {
            return Err(MonoidError::Empty);
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(MonoidError::NotSquare {
                size,
                rows: rows.len(),
                lens: rows.iter().map(Vec::len).collect(),
            });
        }
        if unit >= size {
            return Err(MonoidError::BadElement { index: unit, size });
        }
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= size {
                    return Err(MonoidError::OutOfRange { row, col, value, size });
                }
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let m = FiniteMonoid { size, table, unit };
        for x in 0..size {
            if m.raw(unit, x) != x || m.raw(x, unit) != x {
                return Err(MonoidError::NotIdentity { unit, element: x });
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = m.raw(x, y);
                for z in 0..size {
                    let left = m.raw(xy, z);
                    let right = m.raw(x, m.raw(y, z));
                    if left != right {
                        return Err(MonoidError::NotAssociative { x, y, z, left, right });
                    }
                }
            }
        }
        Ok(m)
    }

    /// Adjoins a fresh identity to a semigroup table. The new unit gets the
    /// index `rows.len()`; existing indices are preserved.
    pub fn adjoin_unit(rows: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let n = rows.len();
        let mut out: Vec<Vec<usize>> = rows
            .into_iter()
            .enumerate()
            .map(|(x, mut r)| {
                r.push(x);
                r
            })
            .collect();
        out.push((0..=n).collect());
        Self::new(out, n)
    }

    #[inline]
    fn raw(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> ElementId {
        ElementId(self.unit)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.size).map(ElementId)
    }

    pub fn contains(&self, a: ElementId) -> bool {
        a.0 < self.size
    }

    /// Table lookup. Panics on an index from a different monoid.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.raw(a.0, b.0))
    }

    pub fn try_mul(&self, a: ElementId, b: ElementId) -> Result<ElementId, MonoidError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(MonoidError::BadElement { index: x.0, size: self.size });
            }
        }
        Ok(self.mul(a, b))
    }

    /// The group of units `H(1)`.
    pub fn group_of_units(&self) -> BTreeSet<ElementId> {
        self.elements()
            .filter(|&x| self.unit_inverse(x).is_some())
            .collect()
    }

    /// Two-sided inverse of a unit, if `x` is one.
    pub fn unit_inverse(&self, x: ElementId) -> Option<ElementId> {
        let one = self.unit();
        self.elements()
            .find(|&y| self.mul(x, y) == one && self.mul(y, x) == one)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|x| self.unit_inverse(x).is_some())
    }

    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> BTreeSet<ElementId> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The natural partial order on idempotents: `e <= f` iff `ef = fe = e`.
    pub fn natural_leq(&self, e: ElementId, f: ElementId) -> Result<bool, MonoidError> {
        for x in [e, f] {
            if !self.contains(x) {
                return Err(MonoidError::BadElement { index: x.0, size: self.size });
            }
            if !self.is_idempotent(x) {
                return Err(MonoidError::NotIdempotent(x.0));
            }
        }
        Ok(self.mul(e, f) == e && self.mul(f, e) == e)
    }

    pub fn classify(&self) -> Classification {
        let is_regular = self
            .elements()
            .all(|x| self.elements().any(|y| self.mul(self.mul(x, y), x) == x));

        let mut inverse_map = Vec::with_capacity(self.size);
        let mut is_inverse = true;
        for x in self.elements() {
            let mut found = self.elements().filter(|&y| {
                self.mul(self.mul(x, y), x) == x && self.mul(self.mul(y, x), y) == y
            });
            match (found.next(), found.next()) {
                (Some(y), None) => inverse_map.push(y),
                _ => {
                    is_inverse = false;
                    break;
                }
            }
        }
        let inverse_map = is_inverse.then_some(inverse_map);
        let is_clifford = inverse_map.as_ref().is_some_and(|inv| {
            self.elements()
                .all(|x| self.mul(x, inv[x.0]) == self.mul(inv[x.0], x))
        });
        Classification { is_regular, is_inverse, is_clifford, inverse_map }
    }

    /// Parses the plain-text table format: a header `n unit`, then `n` rows
    /// of `n` space-separated indices.
    pub fn parse(text: &str) -> Result<Self, MonoidError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(MonoidError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let nums = parse_row(header, hline + 1)?;
        let [n, unit] = nums[..] else {
            return Err(MonoidError::Parse {
                line: hline + 1,
                message: format!("header needs exactly `n unit`, got {} fields", nums.len()),
            });
        };
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines.by_ref().take(n) {
            rows.push(parse_row(line, idx + 1)?);
        }
        if rows.len() != n {
            return Err(MonoidError::Parse {
                line: hline + 1 + rows.len() + 1,
                message: format!("expected {n} table rows, found {}", rows.len()),
            });
        }
        if let Some((idx, _)) = lines.next() {
            return Err(MonoidError::Parse {
                line: idx + 1,
                message: "trailing content after table".into(),
            });
        }
        Self::new(rows, unit)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.size, self.unit);
        for row in self.table.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<Vec<usize>, MonoidError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|e| MonoidError::Parse {
                line: lineno,
                message: format!("bad index {tok:?}: {e}"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_regular: bool,
    pub is_inverse: bool,
    pub is_clifford: bool,
    /// Populated exactly when the monoid is inverse.
    pub inverse_map: Option<Vec<ElementId>>,
}

/// Small named monoids used throughout the test and verification suites.
pub mod builtin {
    use super::FiniteMonoid;

    /// The one-element monoid; its extensions are the extended bicyclic semigroup.
    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0]], 0).unwrap()
    }

    /// `{1, e}` with `e*e = e`; `1` is index 0.
    pub fn semilattice2() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    /// The chain `1 > e > f` (indices 0, 1, 2) with meet as product.
    pub fn chain3() -> FiniteMonoid {
        let rows = (0..3).map(|a| (0..3).map(|b| a.max(b)).collect()).collect();
        FiniteMonoid::new(rows, 0).unwrap()
    }

    /// Cyclic group of order `n`, written additively.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(rows, 0).unwrap()
    }

    /// Left-zero band `{a, b}` (indices 0, 1) with adjoined unit at index 2.
    pub fn leftzero2_plus_one() -> FiniteMonoid {
        FiniteMonoid::adjoin_unit(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    /// `{1, a, 0}` (indices 0, 1, 2) with `a*a = 0`.
    pub fn nil3() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation {
    UnitNotPreserved { image: usize },
    NotMultiplicative { x: usize, y: usize },
    NotInUnits { x: usize, image: usize },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::UnitNotPreserved { image } => write!(f, "unit maps to {image}"),
            HomViolation::NotMultiplicative { x, y } => {
                write!(f, "image({x}*{y}) != image({x})*image({y})")
            }
            HomViolation::NotInUnits { x, image } => {
                write!(f, "image({x}) = {image} is not a unit")
            }
        }
    }
}

/// Result of [`UnitHom::check`]: the first violation found, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCheck {
    pub violation: Option<HomViolation>,
}

impl HomCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// A map `θ: S¹ → H(1)` given pointwise, with a power table for
/// exponents up to [`POWER_CACHE_BOUND`] filled at construction.
#[derive(Debug, Clone)]
pub struct UnitHom {
    monoid: Arc<FiniteMonoid>,
    image: Vec<ElementId>,
    powers: Vec<Vec<ElementId>>,
}

impl UnitHom {
    /// Shape-checks the image array. Algebraic validity is reported by
    /// [`UnitHom::check`].
    pub fn new(monoid: Arc<FiniteMonoid>, image: Vec<ElementId>) -> Result<Self, MonoidError> {
        if image.len() != monoid.size() {
            return Err(MonoidError::ImageLength { got: image.len(), expected: monoid.size() });
        }
        if let Some(bad) = image.iter().find(|x| !monoid.contains(**x)) {
            return Err(MonoidError::BadElement { index: bad.0, size: monoid.size() });
        }
        let mut powers = Vec::with_capacity(POWER_CACHE_BOUND + 1);
        powers.push(monoid.elements().collect::<Vec<_>>());
        for n in 1..=POWER_CACHE_BOUND {
            let prev: &Vec<ElementId> = &powers[n - 1];
            let next = prev.iter().map(|x| image[x.0]).collect();
            powers.push(next);
        }
        Ok(UnitHom { monoid, image, powers })
    }

    pub fn annihilating(monoid: Arc<FiniteMonoid>) -> Self {
        let one = monoid.unit();
        let image = vec![one; monoid.size()];
        Self::new(monoid, image).expect("constant-unit map is well formed")
    }

    pub fn identity(monoid: Arc<FiniteMonoid>) -> Self {
        let image = monoid.elements().collect();
        Self::new(monoid, image).expect("identity map is well formed")
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn image(&self) -> &[ElementId] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x.0]
    }

    pub fn is_annihilating(&self) -> bool {
        let one = self.monoid.unit();
        self.image.iter().all(|&x| x == one)
    }

    /// Multiplicativity, unit preservation and range inside `H(1)`.
    pub fn check(&self) -> HomCheck {
        let m = &self.monoid;
        let one = m.unit();
        let violation = if self.apply(one) != one {
            Some(HomViolation::UnitNotPreserved { image: self.apply(one).0 })
        } else if let Some(x) = m.elements().find(|&x| m.unit_inverse(self.apply(x)).is_none()) {
            Some(HomViolation::NotInUnits { x: x.0, image: self.apply(x).0 })
        } else {
            m.elements()
                .flat_map(|x| m.elements().map(move |y| (x, y)))
                .find(|&(x, y)| self.apply(m.mul(x, y)) != m.mul(self.apply(x), self.apply(y)))
                .map(|(x, y)| HomViolation::NotMultiplicative { x: x.0, y: y.0 })
        };
        HomCheck { violation }
    }

    /// `θ^n(s)`; `θ^0` is the identity map.
    pub fn power(&self, n: i64, s: ElementId) -> Result<ElementId, MonoidError> {
        let n = u64::try_from(n).map_err(|_| MonoidError::NegativePower(n))?;
        Ok(self.power_u(n, s))
    }

    #[inline]
    pub fn power_u(&self, n: u64, s: ElementId) -> ElementId {
        if n as usize <= POWER_CACHE_BOUND {
            return self.powers[n as usize][s.0];
        }
        let mut x = self.powers[POWER_CACHE_BOUND][s.0];
        for _ in POWER_CACHE_BOUND as u64..n {
            x = self.image[x.0];
        }
        x
    }
}

/// Endomorphisms of `(ℤ, +)`: every one is multiplication by a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntGroupEndo {
    Annihilating,
    Scale(i64),
}

impl IntGroupEndo {
    pub fn apply(self, k: i64) -> i64 {
        match self {
            IntGroupEndo::Annihilating => 0,
            IntGroupEndo::Scale(c) => c.checked_mul(k).expect("scaled integer overflows i64"),
        }
    }

    /// The multiplier of `θ^n`.
    pub fn power_factor(self, n: u64) -> i64 {
        if n == 0 {
            return 1;
        }
        match self {
            IntGroupEndo::Annihilating => 0,
            IntGroupEndo::Scale(c) => {
                let exp = u32::try_from(n).unwrap_or(u32::MAX);
                match c {
                    0 => 0,
                    1 => 1,
                    -1 => {
                        if n % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    }
                    _ => c.checked_pow(exp).expect("endomorphism power overflows i64"),
                }
            }
        }
    }

    pub fn power(self, n: u64, k: i64) -> i64 {
        if n == 0 {
            return k;
        }
        self.power_factor(n)
            .checked_mul(k)
            .expect("endomorphism power overflows i64")
    }

    pub fn is_annihilating(self) -> bool {
        matches!(self, IntGroupEndo::Annihilating | IntGroupEndo::Scale(0))
    }
}
