//! The run configuration: a TOML file whose keys mirror the command-line
//! flags. Integers are read without a width limit and then checked against
//! the range the engine supports, so an oversized value gets a diagnostic
//! naming it rather than a wrapped or truncated number.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{field}: {message}")]
    Field { field: &'static str, message: String },
    #[error("{0}")]
    Usage(String),
}

impl ConfigError {
    pub fn field(field: &'static str, message: impl fmt::Display) -> Self {
        ConfigError::Field { field, message: message.to_string() }
    }
}

/// An integer from a config file or flag. Accepts TOML integers and decimal
/// strings of any length; values outside `i64` are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigInt(pub i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntError {
    #[error("`{0}` is not an integer")]
    Syntax(String),
    #[error("{0} is outside the supported range [-2^63, 2^63 - 1]")]
    Range(BigInt),
}

impl FromStr for ConfigInt {
    type Err = IntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let big: BigInt = s.trim().parse().map_err(|_| IntError::Syntax(s.to_string()))?;
        i64::try_from(&big).map(ConfigInt).map_err(|_| IntError::Range(big))
    }
}

impl fmt::Display for ConfigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for ConfigInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.0)
    }
}

impl<'de> Deserialize<'de> for ConfigInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ConfigInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string of decimal digits")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ConfigInt, E> {
                Ok(ConfigInt(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ConfigInt, E> {
                i64::try_from(v).map(ConfigInt).map_err(|_| E::custom(IntError::Range(BigInt::from(v))))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ConfigInt, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// `carrier = "c6"` or `carrier = { rows = [[0, 1], [1, 0]], unit = 0 }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierConfig {
    Named(String),
    Table { rows: Vec<Vec<ConfigInt>>, unit: ConfigInt },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    /// Nontrivial `u_n` as `[n, element]` pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<[ConfigInt; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[ConfigInt; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gbound: Option<ConfigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ConfigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_products: Option<ConfigInt>,
}

impl RunConfig {
    pub fn from_toml(text: &str, path: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse { path: path.to_string(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        Self::from_toml(&text, &shown)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            construction: over.construction.or(self.construction),
            carrier: over.carrier.or(self.carrier),
            theta: over.theta.or(self.theta),
            u: over.u.or(self.u),
            window: over.window.or(self.window),
            gbound: over.gbound.or(self.gbound),
            topology: over.topology.or(self.topology),
            schedule: over.schedule.or(self.schedule),
            suite: over.suite.or(self.suite),
            max_products: over.max_products.or(self.max_products),
        }
    }
}

/// Parses `n:code,n:code,...` as given to `--u`.
pub fn parse_u(s: &str) -> Result<Vec<[ConfigInt; 2]>, ConfigError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (n, g) = t.split_once(':').ok_or_else(|| ConfigError::field("u", format!("`{t}` is not `n:element`")))?;
            let n = n.parse().map_err(|e| ConfigError::field("u", e))?;
            let g = g.parse().map_err(|e| ConfigError::field("u", e))?;
            Ok([n, g])
        })
        .collect()
}
