//! Fixture registry, the verification suite and its report, and fixture
//! export for the command-line front end.

mod export;
mod fixtures;
mod report;
mod suite;

#[cfg(test)]
mod tests;

pub use export::{export_fixture, parse_fixture_name, FixtureSpec};
pub use fixtures::{
    agl_generators, canonical_json, content_hash, q7, substitute_square, DihedralFixture, FixtureRegistry,
    PermutationFixture, SegreFixture, FIXTURE_NAMES,
};
pub use report::{CheckResult, CheckStatus, VerificationReport, REPORT_SCHEMA_VERSION};
pub use suite::{run_suite, Check, SuiteConfig, SuiteContext, CHECKS, CACHE_ENV};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::pfaffian::PfaffianError;
use crate::polyring::PolyError;
use crate::reptheory::RepError;
use crate::varietylab::VarietyError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("fixture file is corrupt: {0}")]
    FixtureCorrupt(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}
