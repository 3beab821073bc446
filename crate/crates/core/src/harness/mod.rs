//! Verification campaigns: instance generators, per-instance checks and an ordered,
//! reproducible report.
//!
//! Checks backed by a theorem abort the campaign on the first failing instance (in stream
//! order, independent of scheduling). Conjecture and observation checks record findings.

mod canonical;
mod config;
mod generate;
mod named;
mod run;

use std::fmt;
use std::time::Duration;

use crate::geometry::PointSet;
use crate::rat::Rat;

pub use canonical::{canonicalize, canonicalize_pair, NonIntegerInput};
pub use config::{CampaignSpec, Check, ConfigError, Generator, Partner, DEFAULT_CEILING};
pub use named::{case_b, example_one, NamedInstance};
pub use run::{evaluate, run_campaign, CheckOutcome, Verdict};

/// One campaign input. Pair checks read `b`, falling back to `A` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub a: PointSet,
    pub b: Option<PointSet>,
}

impl Instance {
    pub fn second(&self) -> &PointSet {
        self.b.as_ref().unwrap_or(&self.a)
    }
}

fn inline(s: &PointSet) -> String {
    s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={}", inline(&self.a))?;
        if let Some(b) = &self.b {
            write!(f, " B={}", inline(b))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CampaignError {
    #[error("campaign would run {planned} instances, above the ceiling {ceiling}")]
    CeilingExceeded { planned: u128, ceiling: usize },
    #[error("{check} failed on instance {index} ({instance}): {detail}")]
    TheoremViolation { check: Check, index: usize, instance: String, detail: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// A check outcome that did not hold, or sat within the near-equality threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub index: usize,
    pub check: Check,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckTally {
    pub run: usize,
    pub passed: usize,
    pub skipped: usize,
    pub findings: usize,
    pub near: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub generator: String,
    pub instances_run: usize,
    pub tallies: Vec<(Check, CheckTally)>,
    /// Conjecture or observation checks that did not hold. Theorem failures abort instead.
    pub findings: Vec<Finding>,
    /// The first `near_limit` holding checks with slack at most the threshold.
    pub near_equality: Vec<(Finding, Rat)>,
    pub elapsed: Duration,
}

impl CampaignReport {
    pub fn tally(&self, check: Check) -> Option<&CheckTally> {
        self.tallies.iter().find(|(c, _)| *c == check).map(|(_, t)| t)
    }

    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    /// Human summary followed by `RESULT` lines. Timing is left out so the text depends only
    /// on the spec.
    pub fn render(&self) -> String {
        let mut out = format!("campaign {} over {} instances\n", self.generator, self.instances_run);
        for (c, t) in &self.tallies {
            out += &format!(
                "  {c}: {} run, {} passed, {} skipped, {} findings, {} near equality\n",
                t.run, t.passed, t.skipped, t.findings, t.near
            );
        }
        for f in &self.findings {
            out += &format!("  finding #{} {}: {} [{}]\n", f.index, f.check, f.detail, f.instance);
        }
        for (f, slack) in &self.near_equality {
            out += &format!("  near #{} {} slack {slack}: {}\n", f.index, f.check, f.detail);
        }
        out += &format!("RESULT instances {}\n", self.instances_run);
        for (c, t) in &self.tallies {
            out += &format!(
                "RESULT check {c} run {} passed {} skipped {} findings {} near {}\n",
                t.run, t.passed, t.skipped, t.findings, t.near
            );
        }
        for f in &self.findings {
            out += &format!("RESULT finding {} {} {}\n", f.check, f.index, f.instance);
        }
        out += &format!("RESULT status {}\n", if self.is_clean() { "clean" } else { "findings" });
        out
    }
}
