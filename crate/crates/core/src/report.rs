//! Check records shared by the verification suites.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A cap or resource limit stopped the check; nothing was decided.
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub suite: String,
    pub id: String,
    /// Which identity or relation family the check exercises.
    pub anchor: String,
    pub status: Status,
    /// Nonzero residue (canonical rendering) or error message when not passing.
    pub witness: Option<String>,
    pub wall_ms: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f`, which returns `Ok(None)` on success or a witness on failure.
pub fn run_check(
    suite: &str,
    id: impl Into<String>,
    anchor: &str,
    f: impl FnOnce() -> Result<Option<String>, Error>,
) -> Check {
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok(None) => (Status::Pass, None),
        Ok(Some(w)) => (Status::Fail, Some(w)),
        Err(e) => (Status::Error, Some(e.to_string())),
    };
    Check {
        suite: suite.to_string(),
        id: id.into(),
        anchor: anchor.to_string(),
        status,
        witness,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// A passing check when `ok`, otherwise a failure carrying `witness()`.
pub fn verdict(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(witness())
    }
}
