//! Named suites of structure and topology checks with deterministic,
//! line-oriented reports.
//!
//! A [`Suite`] is plain data: a [`Recipe`] for the construction, a window,
//! an optional topology and a list of checks. Replaying the same suite gives
//! the same records apart from timings.

mod builtin;
mod cayley;
mod recipe;
mod report;
mod runner;
mod suite;

pub use builtin::{builtin_suite, builtin_suites};
pub use cayley::{cayley_table, CayleyError};
pub use recipe::{Built, BuiltCarrier, CarrierSpec, Construction, Recipe, RecipeError, ThetaSpec};
pub use report::{exit_code, CheckRecord, Status, VerificationReport};
pub use suite::{run_suite, run_suites, Check, CheckSpec, Suite};
