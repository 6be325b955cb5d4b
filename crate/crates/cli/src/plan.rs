//! Turning a [`RunConfig`] into the suites to run.

use zext_core::carrier::Carrier;
use zext_core::topology::{TopologyKind, TopologySpec};
use zext_core::verify::{
    builtin_suite, builtin_suites, Built, BuiltCarrier, CarrierSpec, Check, Construction, Recipe, Suite, ThetaSpec,
};

use crate::config::{CarrierConfig, ConfigError, ConfigInt, RunConfig};

pub const DEFAULT_MAX_PRODUCTS: u64 = 1_000_000;
const DEFAULT_WINDOW: (i64, i64) = (-2, 2);
const DEFAULT_GBOUND: i64 = 2;

fn usize_of(field: &'static str, v: ConfigInt) -> Result<usize, ConfigError> {
    usize::try_from(v.0).map_err(|_| ConfigError::field(field, format!("{v} is not a table index")))
}

/// The construction recipe named by the config.
pub fn recipe(cfg: &RunConfig) -> Result<Recipe, ConfigError> {
    let construction: Construction = cfg
        .construction
        .as_deref()
        .unwrap_or("ext-bicyclic")
        .parse()
        .map_err(|e| ConfigError::field("construction", e))?;
    let carrier = match &cfg.carrier {
        None if construction == Construction::ExtBicyclic => CarrierSpec::named("trivial"),
        None => return Err(ConfigError::field("carrier", format!("{construction} needs a carrier"))),
        Some(CarrierConfig::Named(n)) => CarrierSpec::Named(n.clone()),
        Some(CarrierConfig::Table { rows, unit }) => CarrierSpec::Table {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&v| usize_of("carrier", v)).collect())
                .collect::<Result<_, _>>()?,
            unit: usize_of("carrier", *unit)?,
        },
    };
    let theta = match cfg.theta.as_deref() {
        None => ThetaSpec::Annihilating,
        Some(t) => parse_theta(t)?,
    };
    let u = cfg.u.iter().flatten().map(|[n, g]| (n.0, g.0)).collect();
    let r = Recipe { construction, carrier, theta, u };
    r.build().map_err(|e| ConfigError::Usage(e.to_string()))?;
    Ok(r)
}

/// `scale(c)` reads `c` as an unbounded integer before the range check.
fn parse_theta(t: &str) -> Result<ThetaSpec, ConfigError> {
    if let Some(body) = t.trim().strip_prefix("scale(").and_then(|b| b.strip_suffix(')')) {
        let c: ConfigInt = body.parse().map_err(|e| ConfigError::field("theta", e))?;
        return Ok(ThetaSpec::Scale(c.0));
    }
    t.parse().map_err(|e| ConfigError::field("theta", e))
}

pub fn window(cfg: &RunConfig) -> Result<(i64, i64), ConfigError> {
    let (lo, hi) = cfg.window.map_or(DEFAULT_WINDOW, |[a, b]| (a.0, b.0));
    if lo > hi {
        return Err(ConfigError::field("window", format!("low end {lo} exceeds high end {hi}")));
    }
    Ok((lo, hi))
}

pub fn gbound(cfg: &RunConfig) -> Result<i64, ConfigError> {
    match cfg.gbound {
        None => Ok(DEFAULT_GBOUND),
        Some(ConfigInt(g)) if g >= 0 => Ok(g),
        Some(g) => Err(ConfigError::field("gbound", format!("{g} is negative"))),
    }
}

pub fn max_products(cfg: &RunConfig) -> Result<u64, ConfigError> {
    match cfg.max_products {
        None => Ok(DEFAULT_MAX_PRODUCTS),
        Some(ConfigInt(n)) => u64::try_from(n).map_err(|_| ConfigError::field("max-products", format!("{n} is negative"))),
    }
}

fn topology_kind(cfg: &RunConfig) -> Result<Option<TopologyKind>, ConfigError> {
    cfg.topology
        .as_deref()
        .map(|t| {
            TopologyKind::parse(t).ok_or_else(|| {
                let names: Vec<&str> = TopologyKind::ALL.iter().map(|k| k.name()).collect();
                ConfigError::field("topology", format!("unknown kind `{t}`; expected one of {}", names.join(", ")))
            })
        })
        .transpose()
}

fn carrier_is_inverse(built: &Built) -> bool {
    match built {
        Built::Bicyclic | Built::Carried(Construction::Warne, _) => true,
        Built::Carried(_, BuiltCarrier::Table(t)) => t.is_inverse(),
        Built::Carried(_, BuiltCarrier::Int(t)) => t.is_inverse(),
        Built::Carried(_, BuiltCarrier::Nat(t)) => t.is_inverse(),
    }
}

fn check_topology(built: &Built, kind: TopologyKind) -> Result<(), ConfigError> {
    let err = |m: String| ConfigError::field("topology", m);
    let (k, c) = match built {
        Built::Carried(k @ (Construction::Zbr | Construction::Zbruck), c) => (*k, c),
        _ => return Err(err("topologies are defined on zbr and zbruck constructions".into())),
    };
    let r = match (k, c) {
        (Construction::Zbruck, BuiltCarrier::Table(t)) => TopologySpec::new(kind, t.annihilated()).map(drop),
        (Construction::Zbruck, BuiltCarrier::Int(t)) => TopologySpec::new(kind, t.annihilated()).map(drop),
        (_, BuiltCarrier::Table(t)) => TopologySpec::new(kind, t.clone()).map(drop),
        (_, BuiltCarrier::Int(t)) => TopologySpec::new(kind, *t).map(drop),
        (_, BuiltCarrier::Nat(t)) => TopologySpec::new(kind, t.clone()).map(drop),
    };
    r.map_err(|e| err(e.to_string()))
}

/// The suite built from construction settings: algebraic checks for every
/// construction, the `warne` coefficient checks, and the topology checks when a
/// topology is named.
pub fn custom_suite(cfg: &RunConfig) -> Result<Suite, ConfigError> {
    let recipe = recipe(cfg)?;
    let built = recipe.build().map_err(|e| ConfigError::Usage(e.to_string()))?;
    let (lo, hi) = window(cfg)?;
    let g = gbound(cfg)?;
    let inverse = carrier_is_inverse(&built);
    let mut s = Suite::new("custom", recipe.clone(), (lo, hi), g)
        .check(Check::Associativity)
        .check(Check::Grading)
        .check(Check::Idempotents)
        .check(Check::Simple { pairs: 200, enlargement: 2, seed: 1 })
        .check(Check::InverseTransfer { enlargement: 2 })
        .check(Check::RegularTransfer { enlargement: 2 })
        .check(Check::IBisimple { bound: hi - lo + 2 });
    if recipe.construction == Construction::Warne {
        s = s.check(Check::WarneUnitCoefficient { lo: -5, hi: 5 }).check(Check::WarneBranchAgreement);
    }
    if let Some(kind) = topology_kind(cfg)? {
        check_topology(&built, kind)?;
        s.topology = Some(kind);
        s.schedule = cfg.schedule.map(|c| c.0);
        for c in [Check::Hausdorff, Check::SeparateContinuity, Check::JointContinuity, Check::NbhdLowerset] {
            s = s.check(c);
        }
        if inverse {
            s = s.check(Check::InversionContinuity);
        }
    } else if cfg.schedule.is_some() {
        return Err(ConfigError::field("schedule", "only meaningful with a topology"));
    }
    let cap = max_products(cfg)?;
    let n = element_count(&built, lo, hi, g);
    if n.saturating_mul(n) > u128::from(cap) {
        return Err(ConfigError::Usage(format!(
            "window has {n} elements ({} products), above the cap of {cap}; raise --max-products",
            n.saturating_mul(n)
        )));
    }
    Ok(s)
}

fn element_count(built: &Built, lo: i64, hi: i64, g: i64) -> u128 {
    let side = (i128::from(hi) - i128::from(lo) + 1) as u128;
    let g = u128::from(g.unsigned_abs());
    let middles = match built {
        Built::Bicyclic => 1,
        Built::Carried(_, BuiltCarrier::Table(t)) => t.monoid().size() as u128,
        Built::Carried(_, BuiltCarrier::Int(_)) => 2 * g + 1,
        Built::Carried(_, BuiltCarrier::Nat(_)) => g + 1,
    };
    side.saturating_mul(side).saturating_mul(middles)
}

/// Suites selected by `suite`, or the custom suite when a construction is
/// given, or every builtin suite.
pub fn verify_suites(cfg: &RunConfig) -> Result<Vec<Suite>, ConfigError> {
    let construction_set = cfg.construction.is_some()
        || cfg.carrier.is_some()
        || cfg.theta.is_some()
        || cfg.u.is_some()
        || cfg.topology.is_some();
    match cfg.suite.as_deref() {
        Some(name) if construction_set => Err(ConfigError::Usage(format!(
            "suite `{name}` is fixed; drop the construction settings or the suite"
        ))),
        Some("all") => Ok(builtin_suites()),
        Some(name) => builtin_suite(name).map(|s| vec![s]).ok_or_else(|| {
            let names: Vec<String> = builtin_suites().into_iter().map(|s| s.name).collect();
            ConfigError::field("suite", format!("unknown suite `{name}`; known: all, {}", names.join(", ")))
        }),
        None if construction_set => custom_suite(cfg).map(|s| vec![s]),
        None => Ok(builtin_suites()),
    }
}
