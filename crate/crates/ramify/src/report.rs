//! Structured outcomes for the verification suites.
//!
//! Every suite produces a flat list of [`Case`] records — one per checked
//! claim — which the command-line runner aggregates into a [`Report`]. A
//! case carries human-readable input/expected/computed strings so that a
//! failure is a self-contained counterexample certificate.
//!
//! Serialized reports are deterministic: cases are sorted by id, field
//! order is fixed by the struct, and the volatile fields (wall-clock
//! timestamp, runtime) can be omitted for byte-reproducible output.

use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

/// Outcome of a single checked claim.
#[derive(Clone, Debug, Serialize)]
pub struct Case {
    /// Stable identifier; reports are sorted by it.
    pub id: String,
    /// The configuration the claim was checked on.
    pub input: String,
    /// What the claim predicts.
    pub expected: String,
    /// What was computed.
    pub computed: String,
    /// Which claim family this case certifies.
    pub tag: String,
    /// Whether the check passed (serialized so failures are visible in the
    /// report body, not only via the suite status).
    pub ok: bool,
}

impl Case {
    /// A case that passes iff `expected == computed`.
    pub fn compare(
        id: impl Into<String>,
        input: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        tag: impl Into<String>,
    ) -> Case {
        let expected = expected.into();
        let computed = computed.into();
        let ok = expected == computed;
        Case {
            id: id.into(),
            input: input.into(),
            expected,
            computed,
            tag: tag.into(),
            ok,
        }
    }

    /// A case with an explicit verdict (for bound checks and the like).
    pub fn judged(
        id: impl Into<String>,
        input: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        tag: impl Into<String>,
        ok: bool,
    ) -> Case {
        Case {
            id: id.into(),
            input: input.into(),
            expected: expected.into(),
            computed: computed.into(),
            tag: tag.into(),
            ok,
        }
    }
}

/// Suite status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A suite's aggregated, serializable outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Suite name (the subcommand that produced it).
    pub suite: String,
    /// Pass iff every case passed.
    pub status: Status,
    /// All checked cases, sorted by id.
    pub cases: Vec<Case>,
    /// Seed the suite's sampling was derived from.
    pub seed: u64,
    /// Unix timestamp (seconds); omitted under `--no-timestamp`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    /// Wall-clock runtime in milliseconds; omitted under `--no-timestamp`
    /// since it varies run to run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    /// Assembles a report from cases: sorts them by id and derives the
    /// status.
    pub fn assemble(suite: impl Into<String>, seed: u64, mut cases: Vec<Case>) -> Report {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let status = if cases.iter().all(|c| c.ok) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            suite: suite.into(),
            status,
            cases,
            seed,
            timestamp: None,
            runtime_ms: None,
        }
    }

    /// Stamps the volatile fields (call only when reproducibility is not
    /// requested).
    pub fn stamp(&mut self, runtime_ms: u64) {
        self.timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self.runtime_ms = Some(runtime_ms);
    }

    /// True iff every case passed.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The failed cases.
    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.ok)
    }
}
