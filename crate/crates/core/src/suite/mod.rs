//! Batteries of exact checks, one per module, with deterministic reports.
//!
//! Reports sort their items by `(suite, name, params)` before emission, so
//! identical `(suite, seed)` pairs give identical bytes. Wall time is kept
//! on the report but never serialized.

mod checks;

pub use checks::insertion_lists;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::Error;

pub const SCHEMA: &str = "phase-toda-report/1";

/// Bounds for every battery. Bump `version` when any bound changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defaults {
    pub version: u32,
    /// `N` and `M` range `0..=max` for state vectors and correspondences.
    pub max_particles: usize,
    pub max_sites: u32,
    /// Symbolic scalar products for `N ≤` this, `M ≤ max_sites`.
    pub scalar_symbolic_particles: usize,
    /// Particle counts checked at seeded rational points instead.
    pub scalar_point_particles: [usize; 2],
    pub scalar_points: usize,
    /// `n - m` for the tau-function identities.
    pub prop1_size: usize,
    pub bilinear_size: usize,
    pub bilinear_tuples_per_size: usize,
    pub linear_size: usize,
    pub linear_flow_index: usize,
    pub rtt_sites: usize,
    pub rtt_cap: u32,
    pub rtt_pairs: usize,
}

pub const DEFAULTS: Defaults = Defaults {
    version: 1,
    max_particles: 3,
    max_sites: 3,
    scalar_symbolic_particles: 2,
    scalar_point_particles: [3, 4],
    scalar_points: 20,
    prop1_size: 4,
    bilinear_size: 4,
    bilinear_tuples_per_size: 17,
    linear_size: 3,
    linear_flow_index: 2,
    rtt_sites: 2,
    rtt_cap: 3,
    rtt_pairs: 5,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    All,
    Toda,
    Phase,
    Combinatorics,
    Correspondence,
}

impl SuiteName {
    pub const PARTS: [SuiteName; 4] = [SuiteName::Combinatorics, SuiteName::Toda, SuiteName::Phase, SuiteName::Correspondence];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::All => "all",
            SuiteName::Toda => "toda",
            SuiteName::Phase => "phase",
            SuiteName::Combinatorics => "combinatorics",
            SuiteName::Correspondence => "correspondence",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        [SuiteName::All]
            .into_iter()
            .chain(SuiteName::PARTS)
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The identity does not apply at this point, e.g. a vanishing tau.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub params: String,
    pub status: Status,
    /// Failing values or the error message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(suite: SuiteName, name: &str, params: String, outcome: Result<bool, Error>) -> Self {
        let (status, witness) = match outcome {
            Ok(true) => (Status::Pass, None),
            Ok(false) => (Status::Fail, None),
            Err(Error::DegenerateDenominator(w)) => (Status::Skip, Some(w)),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        CheckResult { suite: suite.as_str().into(), name: name.into(), params, status, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub defaults: Defaults,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub items: Vec<CheckResult>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Report {
    pub fn from_items(command: String, seed: u64, mut items: Vec<CheckResult>, wall_time: Duration) -> Self {
        items.sort();
        let count = |s: Status| items.iter().filter(|i| i.status == s).count();
        Report {
            schema: SCHEMA,
            command,
            seed,
            defaults: DEFAULTS,
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skip),
            items,
            wall_time,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    /// Items named `name` across all suites.
    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.items.iter().filter(move |i| i.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,name,params,status,witness\n");
        for i in &self.items {
            let status = match i.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                i.suite,
                i.name,
                csv_field(&i.params),
                status,
                csv_field(i.witness.as_deref().unwrap_or(""))
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn battery(name: SuiteName, seed: u64) -> Vec<CheckResult> {
    match name {
        SuiteName::Combinatorics => checks::combinatorics(&DEFAULTS),
        SuiteName::Toda => checks::toda(&DEFAULTS, seed),
        SuiteName::Phase => checks::phase(&DEFAULTS, seed),
        SuiteName::Correspondence => checks::correspondence(&DEFAULTS),
        SuiteName::All => unreachable!(),
    }
}

/// Runs one battery, or all four on separate threads.
pub fn run_suite(name: SuiteName, seed: u64) -> Report {
    let start = Instant::now();
    let items = match name {
        SuiteName::All => std::thread::scope(|scope| {
            let handles: Vec<_> = SuiteName::PARTS.iter().map(|&p| scope.spawn(move || battery(p, seed))).collect();
            handles.into_iter().flat_map(|h| h.join().expect("battery panicked")).collect()
        }),
        part => battery(part, seed),
    };
    Report::from_items(format!("suite {} --seed {seed}", name.as_str()), seed, items, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in [SuiteName::All].into_iter().chain(SuiteName::PARTS) {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!(matches!("nope".parse::<SuiteName>(), Err(Error::Config(_))));
    }

    #[test]
    fn csv_quotes_commas() {
        let r = Report::from_items(
            "x".into(),
            0,
            vec![CheckResult::new(SuiteName::Toda, "t", "a=1,b=2".into(), Ok(true))],
            Duration::ZERO,
        );
        assert_eq!(r.to_csv(), "suite,name,params,status,witness\ntoda,t,\"a=1,b=2\",pass,\n");
    }
}
