use std::fmt;

use super::{ExtError, Extension};
use crate::carrier::Carrier;

/// A triple `(i, s, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement<T> {
    pub i: i64,
    pub s: T,
    pub j: i64,
}

impl<T> ExtElement<T> {
    pub const fn new(i: i64, s: T, j: i64) -> Self {
        ExtElement { i, s, j }
    }
}

impl<T: fmt::Display> fmt::Display for ExtElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.s, self.j)
    }
}

/// `{(m, s, n) : s ∈ a}`.
pub fn layer<T: Copy>(m: i64, n: i64, a: impl IntoIterator<Item = T>) -> Vec<ExtElement<T>> {
    a.into_iter().map(|s| ExtElement::new(m, s, n)).collect()
}

fn window_of<C: Carrier>(c: &C, lo: i64, hi: i64, g_bound: i64) -> Vec<ExtElement<C::Elem>> {
    let sample = c.sample(g_bound);
    let mut out = Vec::with_capacity(sample.len() * ((hi - lo + 1).max(0) as usize).pow(2));
    for i in lo..=hi {
        for j in lo..=hi {
            out.extend(sample.iter().map(|&s| ExtElement::new(i, s, j)));
        }
    }
    out
}

fn idempotents_of<C: Carrier>(c: &C, lo: i64, hi: i64, g_bound: i64) -> Vec<ExtElement<C::Elem>> {
    let es: Vec<_> = c.sample(g_bound).into_iter().filter(|&e| c.is_idempotent(e)).collect();
    (lo..=hi).flat_map(|i| layer(i, i, es.iter().copied())).collect()
}

/// The ℤ-Bruck-Reilly extension `B(S,ℤ,θ)` over a carrier.
#[derive(Debug, Clone)]
pub struct BruckReilly<C> {
    carrier: C,
}

impl<C: Carrier> BruckReilly<C> {
    pub fn new(carrier: C) -> Self {
        BruckReilly { carrier }
    }

    pub fn carrier(&self) -> &C {
        &self.carrier
    }

    pub fn product(&self, x: ExtElement<C::Elem>, y: ExtElement<C::Elem>) -> ExtElement<C::Elem> {
        let c = &self.carrier;
        let ExtElement { i, s, j } = x;
        let ExtElement { i: m, s: t, j: n } = y;
        if j < m {
            let d = (m - j) as u64;
            ExtElement::new(i - j + m, c.mul(c.theta_pow(d, s), t), n)
        } else if j == m {
            ExtElement::new(i, c.mul(s, t), n)
        } else {
            let d = (j - m) as u64;
            ExtElement::new(i, c.mul(s, c.theta_pow(d, t)), n - m + j)
        }
    }

    /// `(j, s⁻¹, i)`; requires an inverse carrier.
    pub fn invert(&self, x: ExtElement<C::Elem>) -> Result<ExtElement<C::Elem>, ExtError> {
        let s = self.carrier.inverse(x.s).ok_or(ExtError::NotInverse)?;
        Ok(ExtElement::new(x.j, s, x.i))
    }
}

impl<C: Carrier> Extension for BruckReilly<C> {
    type Elem = ExtElement<C::Elem>;

    #[inline]
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.product(x, y)
    }

    fn indices(&self, x: Self::Elem) -> (i64, i64) {
        (x.i, x.j)
    }

    fn middle_code(&self, x: Self::Elem) -> i64 {
        self.carrier.code(x.s)
    }

    fn window(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem> {
        window_of(&self.carrier, lo, hi, g_bound)
    }

    fn layer_unit(&self, i: i64, j: i64) -> Self::Elem {
        ExtElement::new(i, self.carrier.unit(), j)
    }

    fn inverse(&self, x: Self::Elem) -> Option<Self::Elem> {
        self.invert(x).ok()
    }

    fn closed_form_idempotents(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem> {
        idempotents_of(&self.carrier, lo, hi, g_bound)
    }

    fn describe(&self) -> String {
        format!("zbr[{}]", self.carrier.describe())
    }
}

/// The ℤ-Bruck extension `B(S,ℤ)`: positive powers of `θ` send every
/// element to the unit, whatever homomorphism the carrier holds.
#[derive(Debug, Clone)]
pub struct Bruck<C> {
    carrier: C,
}

impl<C: Carrier> Bruck<C> {
    pub fn new(carrier: C) -> Self {
        Bruck { carrier }
    }

    pub fn carrier(&self) -> &C {
        &self.carrier
    }

    pub fn product(&self, x: ExtElement<C::Elem>, y: ExtElement<C::Elem>) -> ExtElement<C::Elem> {
        let ExtElement { i, s, j } = x;
        let ExtElement { i: m, s: t, j: n } = y;
        match j.cmp(&m) {
            std::cmp::Ordering::Less => ExtElement::new(i - j + m, t, n),
            std::cmp::Ordering::Equal => ExtElement::new(i, self.carrier.mul(s, t), n),
            std::cmp::Ordering::Greater => ExtElement::new(i, s, n - m + j),
        }
    }
}

impl<C: Carrier> Extension for Bruck<C> {
    type Elem = ExtElement<C::Elem>;

    #[inline]
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.product(x, y)
    }

    fn indices(&self, x: Self::Elem) -> (i64, i64) {
        (x.i, x.j)
    }

    fn middle_code(&self, x: Self::Elem) -> i64 {
        self.carrier.code(x.s)
    }

    fn window(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem> {
        window_of(&self.carrier, lo, hi, g_bound)
    }

    fn layer_unit(&self, i: i64, j: i64) -> Self::Elem {
        ExtElement::new(i, self.carrier.unit(), j)
    }

    fn inverse(&self, x: Self::Elem) -> Option<Self::Elem> {
        self.carrier.inverse(x.s).map(|s| ExtElement::new(x.j, s, x.i))
    }

    fn closed_form_idempotents(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem> {
        idempotents_of(&self.carrier, lo, hi, g_bound)
    }

    fn describe(&self) -> String {
        format!("zbruck[{}]", self.carrier.describe())
    }
}
