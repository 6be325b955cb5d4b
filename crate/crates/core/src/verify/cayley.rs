use thiserror::Error;

use super::recipe::{warne_system, Built, BuiltCarrier, Construction, Recipe, RecipeError};
use crate::carrier::Carrier;
use crate::extensions::{cayley_window, Bruck, BruckReilly, ExtBicyclic, Extension};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error("window [{lo},{hi}] is empty")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("window has {products} products, above the cap of {cap}")]
    TooLarge { products: u128, cap: u64 },
}

fn middles(c: &BuiltCarrier, g_bound: i64) -> u128 {
    let g = u128::from(g_bound.unsigned_abs());
    match c {
        BuiltCarrier::Table(t) => t.monoid().size() as u128,
        BuiltCarrier::Int(_) => 2 * g + 1,
        BuiltCarrier::Nat(_) => g + 1,
    }
}

fn lines<E: Extension>(ext: &E, lo: i64, hi: i64, g_bound: i64) -> Vec<String> {
    cayley_window(ext, &ext.window(lo, hi, g_bound))
}

/// The product table of the window, one `i j s m t n -> k d l` line per
/// ordered pair. The product count is checked against `cap` before any
/// element is generated.
pub fn cayley_table(recipe: &Recipe, lo: i64, hi: i64, g_bound: i64, cap: u64) -> Result<Vec<String>, CayleyError> {
    if lo > hi {
        return Err(CayleyError::EmptyWindow { lo, hi });
    }
    let built = recipe.build()?;
    let side = (i128::from(hi) - i128::from(lo) + 1) as u128;
    let elements = match &built {
        Built::Bicyclic => side * side,
        Built::Carried(_, c) => side.saturating_mul(side).saturating_mul(middles(c, g_bound)),
    };
    let products = elements.saturating_mul(elements);
    if products > u128::from(cap) {
        return Err(CayleyError::TooLarge { products, cap });
    }
    Ok(match built {
        Built::Bicyclic => lines(&ExtBicyclic, lo, hi, g_bound),
        Built::Carried(k, c) => match (k, c) {
            (Construction::Zbr, BuiltCarrier::Table(c)) => lines(&BruckReilly::new(c), lo, hi, g_bound),
            (Construction::Zbr, BuiltCarrier::Int(c)) => lines(&BruckReilly::new(c), lo, hi, g_bound),
            (Construction::Zbr, BuiltCarrier::Nat(c)) => lines(&BruckReilly::new(c), lo, hi, g_bound),
            (Construction::Zbruck, BuiltCarrier::Table(c)) => lines(&Bruck::new(c), lo, hi, g_bound),
            (Construction::Zbruck, BuiltCarrier::Int(c)) => lines(&Bruck::new(c), lo, hi, g_bound),
            (Construction::Zbruck, BuiltCarrier::Nat(c)) => lines(&Bruck::new(c), lo, hi, g_bound),
            (Construction::Warne, BuiltCarrier::Table(c)) => lines(&warne_system(&c, &recipe.u)?, lo, hi, g_bound),
            (Construction::Warne, BuiltCarrier::Int(c)) => lines(&warne_system(&c, &recipe.u)?, lo, hi, g_bound),
            (_, c) => {
                let name = match &c {
                    BuiltCarrier::Nat(n) => n.describe(),
                    _ => recipe.carrier.to_string(),
                };
                return Err(RecipeError::NotAGroup(name).into());
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::ThetaSpec;

    #[test]
    fn small_tables() {
        let r = Recipe::new(Construction::ExtBicyclic, "trivial", ThetaSpec::Annihilating);
        assert_eq!(cayley_table(&r, 0, 1, 0, 1000).unwrap().len(), 16);
        let r = Recipe::new(Construction::Zbruck, "semilattice2", ThetaSpec::Annihilating);
        let t = cayley_table(&r, 0, 0, 0, 1000).unwrap();
        assert_eq!(t, vec!["0 0 0 0 0 0 -> 0 0 0", "0 0 0 0 1 0 -> 0 1 0", "0 0 1 0 0 0 -> 0 1 0", "0 0 1 0 1 0 -> 0 1 0"]);
    }

    #[test]
    fn cap_is_checked_first() {
        let r = Recipe::new(Construction::Zbr, "int-group", ThetaSpec::Annihilating);
        let e = cayley_table(&r, -1_000_000_000, 1_000_000_000, i64::MAX, 1_000_000).unwrap_err();
        assert!(matches!(e, CayleyError::TooLarge { .. }));
        assert_eq!(cayley_table(&r, 0, 0, 10, 441).unwrap().len(), 441);
        assert!(cayley_table(&r, 0, 0, 10, 440).is_err());
    }
}
