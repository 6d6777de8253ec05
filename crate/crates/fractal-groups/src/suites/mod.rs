//! Verification suites: named property checks over every library crate,
//! sized by a [`Budget`] and reproducible from a seed.

mod cyclic;
mod dendrites;
mod laminations;
mod replacement;
mod trees;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::CliError;

pub use self::replacement::{fixture_check, Fixture};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Cyclic,
    Trees,
    Dendrites,
    Replacement,
    Laminations,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Cyclic => "cyclic",
            Suite::Trees => "trees",
            Suite::Dendrites => "dendrites",
            Suite::Replacement => "replacement",
            Suite::Laminations => "laminations",
        }
    }

    fn contains(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// A check body: the number of cases examined, or a description of the
/// first failure.
pub type CheckFn = fn(&Budget, u64) -> Result<usize, String>;

/// A registered check.
pub struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    /// The property verified, in words.
    pub property: &'static str,
    pub run: CheckFn,
}

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub property: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub budget: Budget,
    pub fixture: Option<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_human(&self) -> String {
        let mut s = format!("suite {} (seed {})\n", self.suite.name(), self.seed);
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<40} {:>7} ms  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.millis,
                c.detail
            ));
        }
        s.push_str(if self.passed {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        });
        s
    }
}

/// Fails the enclosing check with a formatted message unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}
pub(crate) use ensure;

/// Converts a library error into a check failure.
pub(crate) fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Every registered check, in suite order.
pub fn registry() -> Vec<CheckDef> {
    let mut v = Vec::new();
    v.extend(cyclic::checks());
    v.extend(trees::checks());
    v.extend(dendrites::checks());
    v.extend(replacement::checks());
    v.extend(laminations::checks());
    v
}

fn timed(id: &str, property: &str, f: impl FnOnce() -> Result<usize, String>) -> Check {
    let start = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(format!("panicked: {msg}"))
    });
    let millis = start.elapsed().as_millis() as u64;
    let (passed, cases, detail) = match r {
        Ok(n) => (true, n, format!("{n} cases")),
        Err(e) => (false, 0, e),
    };
    Check {
        id: id.into(),
        property: property.into(),
        passed,
        cases,
        detail,
        millis,
    }
}

/// Runs one registered check by id.
pub fn run_check(id: &str, budget: &Budget, seed: u64) -> Result<Check, CliError> {
    let def = registry()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| CliError::Usage(format!("no check `{id}`")))?;
    Ok(timed(def.id, def.property, || (def.run)(budget, seed)))
}

/// Runs every check of `suite`, plus the planted-defect check of `fixture`
/// when given.
pub fn run_suite(suite: Suite, budget: &Budget, seed: u64, fixture: Option<&Fixture>) -> Report {
    let mut checks: Vec<Check> = registry()
        .into_iter()
        .filter(|d| suite.contains(d.suite))
        .map(|d| timed(d.id, d.property, || (d.run)(budget, seed)))
        .collect();
    if let Some(f) = fixture {
        checks.push(timed(
            "replacement.fixture",
            "the given system satisfies its axioms",
            || fixture_check(f, budget.depth),
        ));
    }
    Report {
        suite,
        seed,
        budget: budget.clone(),
        fixture: fixture.map(|f| f.system.name.clone()),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
