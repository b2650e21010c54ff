//! Executable laws: randomized checks of the algebraic properties of the
//! constructions in this crate.
//!
//! Each law runs a number of seeded instances in parallel and reports its
//! failures as structured counterexample bundles. Reports serialize to one
//! JSON record per law; elapsed time is kept out of the records so that runs
//! with the same seed produce identical output.

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub mod assoc;
pub mod classic;
pub mod concurrency;
pub mod gen;
pub mod suite;

pub use assoc::{associativity_check, associativity_outcome, AssocOutcome};
pub use classic::{classic_shift_oracle, cospans_isomorphic};
pub use concurrency::{analysis, concurrency_iso, synthesis, Synthesis};
pub use suite::{run_suite, SuiteConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub instances: usize,
    /// Instances for which no usable random input was found.
    #[serde(default)]
    pub skipped: usize,
    pub failures: Vec<serde_json::Value>,
    /// The corpus bound behind any equivalence verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for LawReport {
    fn eq(&self, other: &Self) -> bool {
        (&self.law, self.instances, self.skipped, &self.failures, &self.bound)
            == (&other.law, other.instances, other.skipped, &other.failures, &other.bound)
    }
}

impl LawReport {
    pub fn new(law: impl Into<String>) -> LawReport {
        LawReport {
            law: law.into(),
            instances: 0,
            skipped: 0,
            failures: Vec::new(),
            bound: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `law: PASS (n instances, t ms)` or `law: FAIL (k of n ...)`.
    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{}: {verdict} ({} instances", self.law, self.instances);
        if !self.passed() {
            s += &format!(", {} failures", self.failures.len());
        }
        if self.skipped > 0 {
            s += &format!(", {} skipped", self.skipped);
        }
        s += &format!(", {} ms)", self.elapsed.as_millis());
        s
    }
}
