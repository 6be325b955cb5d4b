use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{CarrierError, GroupCarrier, IntCarrier, NatCarrier, NatOp, TableCarrier};
use crate::extensions::{ExtError, WarneSystem};
use crate::monoid::{builtin, ElementId, FiniteMonoid, IntGroupEndo, MonoidError, UnitHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("unknown carrier `{0}`")]
    UnknownCarrier(String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("bad theta `{0}`")]
    BadThetaSyntax(String),
    #[error("theta `{theta}` does not apply to carrier {carrier}")]
    ThetaMismatch { theta: String, carrier: String },
    #[error("warne needs a group carrier, got {0}")]
    NotAGroup(String),
    #[error("u-sequence is only used by warne")]
    StrayU,
    #[error("u_{index} = {code} is not an element of the carrier")]
    BadU { index: i64, code: i64 },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    ExtBicyclic,
    Zbr,
    Zbruck,
    Warne,
}

impl Construction {
    pub const ALL: [Construction; 4] =
        [Construction::ExtBicyclic, Construction::Zbr, Construction::Zbruck, Construction::Warne];

    pub fn name(self) -> &'static str {
        match self {
            Construction::ExtBicyclic => "ext-bicyclic",
            Construction::Zbr => "zbr",
            Construction::Zbruck => "zbruck",
            Construction::Warne => "warne",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| RecipeError::UnknownConstruction(s.into()))
    }
}

/// A named builtin carrier or an explicit table. Element `unit` of the table
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierSpec {
    Named(String),
    Table { rows: Vec<Vec<usize>>, unit: usize },
}

impl CarrierSpec {
    /// Builtin names; `c<n>` also names the cyclic group of order `n`.
    pub const NAMES: [&'static str; 10] = [
        "trivial",
        "semilattice2",
        "chain3",
        "c2",
        "c6",
        "leftzero2+1",
        "nil3",
        "int-group",
        "nplus",
        "nmax",
    ];

    pub fn named(s: &str) -> Self {
        CarrierSpec::Named(s.to_string())
    }
}

impl fmt::Display for CarrierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierSpec::Named(n) => f.write_str(n),
            CarrierSpec::Table { rows, unit } => {
                let rows: Vec<String> =
                    rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
                write!(f, "table(unit {unit}; {})", rows.join("; "))
            }
        }
    }
}

/// `θ` on the carrier: `annihilating`, `identity`, `table(a,b,..)` listing
/// the image of each table element, or `scale(c)` on the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaSpec {
    Annihilating,
    Identity,
    Table(Vec<usize>),
    Scale(i64),
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Annihilating => f.write_str("annihilating"),
            ThetaSpec::Identity => f.write_str("identity"),
            ThetaSpec::Table(v) => {
                write!(f, "table({})", v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
            }
            ThetaSpec::Scale(c) => write!(f, "scale({c})"),
        }
    }
}

impl FromStr for ThetaSpec {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RecipeError::BadThetaSyntax(s.into());
        let s = s.trim();
        match s {
            "annihilating" => return Ok(ThetaSpec::Annihilating),
            "identity" => return Ok(ThetaSpec::Identity),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        match head.trim() {
            "scale" => body.trim().parse().map(ThetaSpec::Scale).map_err(|_| bad()),
            "table" => body
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map(ThetaSpec::Table)
                .map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Everything needed to build one construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub construction: Construction,
    pub carrier: CarrierSpec,
    pub theta: ThetaSpec,
    /// Nontrivial `u_n` as `(n, element code)`, for the `warne` construction.
    #[serde(default)]
    pub u: Vec<(i64, i64)>,
}

impl Recipe {
    pub fn new(construction: Construction, carrier: &str, theta: ThetaSpec) -> Self {
        Recipe { construction, carrier: CarrierSpec::named(carrier), theta, u: Vec::new() }
    }

    pub fn with_u(mut self, u: Vec<(i64, i64)>) -> Self {
        self.u = u;
        self
    }

    /// Builds the carrier and validates the combination.
    pub fn build(&self) -> Result<Built, RecipeError> {
        if self.construction != Construction::Warne && !self.u.is_empty() {
            return Err(RecipeError::StrayU);
        }
        if self.construction == Construction::ExtBicyclic {
            return Ok(Built::Bicyclic);
        }
        let carrier = self.carrier()?;
        if self.construction == Construction::Warne {
            match &carrier {
                BuiltCarrier::Table(t) if t.is_group() => drop(warne_system(t, &self.u)?),
                BuiltCarrier::Int(z) => drop(warne_system(z, &self.u)?),
                _ => return Err(RecipeError::NotAGroup(self.carrier.to_string())),
            }
        }
        Ok(Built::Carried(self.construction, carrier))
    }

    fn carrier(&self) -> Result<BuiltCarrier, RecipeError> {
        let mismatch = |carrier: &str| RecipeError::ThetaMismatch { theta: self.theta.to_string(), carrier: carrier.into() };
        let (monoid, name) = match &self.carrier {
            CarrierSpec::Table { rows, unit } => (FiniteMonoid::new(rows.clone(), *unit)?, "table".to_string()),
            CarrierSpec::Named(n) => match n.as_str() {
                "int-group" => {
                    let endo = match self.theta {
                        ThetaSpec::Annihilating => IntGroupEndo::Annihilating,
                        ThetaSpec::Identity => IntGroupEndo::Scale(1),
                        ThetaSpec::Scale(c) => IntGroupEndo::Scale(c),
                        ThetaSpec::Table(_) => return Err(mismatch(n)),
                    };
                    return Ok(BuiltCarrier::Int(IntCarrier::new(endo)));
                }
                "nplus" | "nmax" => {
                    if self.theta != ThetaSpec::Annihilating {
                        return Err(mismatch(n));
                    }
                    let op = if n == "nplus" { NatOp::Add } else { NatOp::Max };
                    return Ok(BuiltCarrier::Nat(NatCarrier::new(op)));
                }
                _ => (named_monoid(n)?, n.clone()),
            },
        };
        let m = Arc::new(monoid);
        let theta = match &self.theta {
            ThetaSpec::Annihilating => UnitHom::annihilating(m),
            ThetaSpec::Identity => UnitHom::identity(m),
            ThetaSpec::Table(image) => UnitHom::new(m, image.iter().map(|&k| ElementId(k)).collect())?,
            ThetaSpec::Scale(_) => return Err(mismatch(&name)),
        };
        Ok(BuiltCarrier::Table(TableCarrier::new(theta, name)?))
    }
}

/// The `warne` system over `g` with `u_n` given by element codes.
pub(crate) fn warne_system<G: GroupCarrier>(g: &G, u: &[(i64, i64)]) -> Result<WarneSystem<G>, RecipeError> {
    let u = u
        .iter()
        .map(|&(index, code)| g.decode(code).map(|e| (index, e)).ok_or(RecipeError::BadU { index, code }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WarneSystem::new(g.clone(), u)?)
}

fn named_monoid(n: &str) -> Result<FiniteMonoid, RecipeError> {
    Ok(match n {
        "trivial" => builtin::trivial(),
        "semilattice2" => builtin::semilattice2(),
        "chain3" => builtin::chain3(),
        "leftzero2+1" => builtin::leftzero2_plus_one(),
        "nil3" => builtin::nil3(),
        _ => match n.strip_prefix('c').and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if (1..=64).contains(&k) => builtin::cyclic(k),
            _ => return Err(RecipeError::UnknownCarrier(n.into())),
        },
    })
}

#[derive(Debug, Clone)]
pub enum BuiltCarrier {
    Table(TableCarrier),
    Int(IntCarrier),
    Nat(NatCarrier),
}

#[derive(Debug, Clone)]
pub enum Built {
    Bicyclic,
    Carried(Construction, BuiltCarrier),
}
