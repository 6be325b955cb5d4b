//! The four constructions: the extended bicyclic semigroup, the ℤ-Bruck-Reilly
//! extension `B(S,ℤ,θ)`, the ℤ-Bruck extension `B(S,ℤ)` and the twisted extension `B_W`.
//!
//! Every construction is a set of triples (or pairs) carrying two integer
//! indices, and implements [`Extension`] so the structure and verification
//! code can run uniformly over any of them.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

mod bicyclic;
mod warne;
mod zbr;

pub use bicyclic::{BicyclicPair, ExtBicyclic};
pub use warne::{WarneElement, WarneSystem};
pub use zbr::{layer, Bruck, BruckReilly, ExtElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("carrier is not an inverse monoid")]
    NotInverse,
    #[error("carrier is not a group")]
    NotAGroup,
    #[error("u_{index} must be the identity for positive indices")]
    PositiveSupport { index: i64 },
    #[error("negative first index {0} for the coefficient f")]
    NegativeCoefficient(i64),
    #[error("element code {0} is not in the carrier")]
    BadCode(i64),
}

/// A semigroup whose elements carry a left and right integer index.
pub trait Extension: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;

    /// The `(i, j)` indices of `(i, s, j)`.
    fn indices(&self, x: Self::Elem) -> (i64, i64);

    /// Integer code of the middle component (0 for the bicyclic pairs).
    fn middle_code(&self, x: Self::Elem) -> i64;

    /// `{(i, s, j) : lo <= i, j <= hi}` with `s` drawn from the carrier's
    /// sample for `g_bound`, in `(i, j, s)` order.
    fn window(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem>;

    /// `(i, 1, j)`.
    fn layer_unit(&self, i: i64, j: i64) -> Self::Elem;

    /// Closed-form inverse, when the construction is an inverse semigroup.
    fn inverse(&self, x: Self::Elem) -> Option<Self::Elem>;

    /// `{(i, e, i) : e idempotent in the carrier}` over the window.
    fn closed_form_idempotents(&self, lo: i64, hi: i64, g_bound: i64) -> Vec<Self::Elem>;

    fn describe(&self) -> String;

    fn show(&self, x: Self::Elem) -> String {
        let (i, j) = self.indices(x);
        format!("({},{},{})", i, self.middle_code(x), j)
    }

    /// Order used to pick the reported counterexample: `(|i|+|j|, i, j, s)`.
    fn sort_key(&self, x: Self::Elem) -> (u64, i64, i64, i64) {
        let (i, j) = self.indices(x);
        (i.unsigned_abs() + j.unsigned_abs(), i, j, self.middle_code(x))
    }
}

/// One line of the Cayley-window export: `i j s m t n -> k d l`.
pub fn cayley_line<E: Extension>(ext: &E, x: E::Elem, y: E::Elem) -> String {
    let (i, j) = ext.indices(x);
    let (m, n) = ext.indices(y);
    let p = ext.mul(x, y);
    let (k, l) = ext.indices(p);
    format!(
        "{} {} {} {} {} {} -> {} {} {}",
        i,
        j,
        ext.middle_code(x),
        m,
        ext.middle_code(y),
        n,
        k,
        ext.middle_code(p),
        l
    )
}

/// The full product table of a window, one [`cayley_line`] per ordered pair.
pub fn cayley_window<E: Extension>(ext: &E, elements: &[E::Elem]) -> Vec<String> {
    elements
        .iter()
        .flat_map(|&x| elements.iter().map(move |&y| cayley_line(ext, x, y)))
        .collect()
}
