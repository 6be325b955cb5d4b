use std::collections::BTreeMap;

use super::zbr::ExtElement;
use super::{ExtError, Extension};
use crate::carrier::GroupCarrier;

/// An element `(a, g, b)` of `B_W`.
pub type WarneElement<T> = ExtElement<T>;

/// `B_W = ℤ × G × ℤ` for a group `G`, an endomorphism `θ` (held by
/// the carrier) and a sequence `u_n` that is trivial for `n >= 1`.
#[derive(Debug, Clone)]
pub struct WarneSystem<G: GroupCarrier> {
    group: G,
    u: BTreeMap<i64, G::Elem>,
}

impl<G: GroupCarrier> WarneSystem<G> {
    /// Entries equal to the identity are dropped, so `u_support` lists
    /// exactly the indices with `u_n != e`.
    pub fn new(group: G, u: impl IntoIterator<Item = (i64, G::Elem)>) -> Result<Self, ExtError> {
        if !group.is_group() {
            return Err(ExtError::NotAGroup);
        }
        let e = group.unit();
        let mut support = BTreeMap::new();
        for (n, g) in u {
            if !group.contains(g) {
                return Err(ExtError::BadCode(group.code(g)));
            }
            if g == e {
                support.remove(&n);
                continue;
            }
            if n >= 1 {
                return Err(ExtError::PositiveSupport { index: n });
            }
            support.insert(n, g);
        }
        Ok(WarneSystem { group, u: support })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn u(&self, n: i64) -> G::Elem {
        self.u.get(&n).copied().unwrap_or_else(|| self.group.unit())
    }

    pub fn u_support(&self) -> impl Iterator<Item = (i64, G::Elem)> + '_ {
        self.u.iter().map(|(&n, &g)| (n, g))
    }

    /// `f_{m,n} = θ^{m-1}(u_{n+1}) · θ^{m-2}(u_{n+2}) ⋯ u_{n+m}`, `f_{0,n} = e`.
    pub fn f_coeff(&self, m: i64, n: i64) -> Result<G::Elem, ExtError> {
        if m < 0 {
            return Err(ExtError::NegativeCoefficient(m));
        }
        Ok(self.f(m as u64, n))
    }

    // Only support indices in [n+1, n+m] contribute a non-identity factor.
    fn f(&self, m: u64, n: i64) -> G::Elem {
        let g = &self.group;
        if m == 0 {
            return g.unit();
        }
        let top = n + m as i64;
        self.u
            .range(n + 1..=top)
            .fold(g.unit(), |acc, (&idx, &un)| g.mul(acc, g.theta_pow((top - idx) as u64, un)))
    }

    fn f_inv(&self, m: u64, n: i64) -> G::Elem {
        self.group.group_inv(self.f(m, n))
    }

    /// The `b >= c` branch of the product, evaluated whenever `b >= c`.
    pub fn upper_branch(&self, x: WarneElement<G::Elem>, y: WarneElement<G::Elem>) -> WarneElement<G::Elem> {
        let g = &self.group;
        let (a, gx, b) = (x.i, x.s, x.j);
        let (c, h, d) = (y.i, y.s, y.j);
        debug_assert!(b >= c);
        let k = (b - c) as u64;
        let mid = g.mul(g.mul(g.mul(gx, self.f_inv(k, c)), g.theta_pow(k, h)), self.f(k, d));
        ExtElement::new(a, mid, d - c + b)
    }

    /// The `b <= c` branch of the product.
    pub fn lower_branch(&self, x: WarneElement<G::Elem>, y: WarneElement<G::Elem>) -> WarneElement<G::Elem> {
        let g = &self.group;
        let (a, gx, b) = (x.i, x.s, x.j);
        let (c, h, d) = (y.i, y.s, y.j);
        debug_assert!(b <= c);
        let k = (c - b) as u64;
        let mid = g.mul(g.mul(g.mul(self.f_inv(k, a), g.theta_pow(k, gx)), self.f(k, b)), h);
        ExtElement::new(a - b + c, mid, d)
    }

    pub fn product(&self, x: WarneElement<G::Elem>, y: WarneElement<G::Elem>) -> WarneElement<G::Elem> {
        if x.j >= y.i {
            self.upper_branch(x, y)
        } else {
            self.lower_branch(x, y)
        }
    }
}

impl<G: GroupCarrier> Extension for WarneSystem<G> {
    type Elem = WarneElement<G::Elem>;

    #[inline]
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.product(x, y)
    }

    fn indices(&self, x: Self::Elem) -> (i64, i64) {
        (x.i, x.j)
    }

    fn middle_code(&self, x: Self::Elem) -> i64 {
        self.group.code(x.s)
    }

    fn window(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem> {
        let sample = self.group.sample(g_bound);
        (lo..=hi)
            .flat_map(|a| (lo..=hi).map(move |b| (a, b)))
            .flat_map(|(a, b)| sample.iter().map(move |&g| ExtElement::new(a, g, b)))
            .collect()
    }

    fn layer_unit(&self, i: i64, j: i64) -> Self::Elem {
        ExtElement::new(i, self.group.unit(), j)
    }

    fn inverse(&self, x: Self::Elem) -> Option<Self::Elem> {
        Some(ExtElement::new(x.j, self.group.group_inv(x.s), x.i))
    }

    fn closed_form_idempotents(&self, lo: i64, hi: i64, _g_bound: i64) -> Vec<Self::Elem> {
        (lo..=hi).map(|n| self.layer_unit(n, n)).collect()
    }

    fn describe(&self) -> String {
        let u: Vec<String> = self
            .u
            .iter()
            .map(|(n, g)| format!("{}:{}", n, self.group.code(*g)))
            .collect();
        format!("warne[{}; u={}]", self.group.describe(), u.join(","))
    }
}
