//! Ceilings for the exhaustive searches.
//!
//! Every brute-force routine takes a [`Limits`] and refuses work above it with
//! [`Error::ResourceLimit`](crate::Error::ResourceLimit). The environment
//! variable `LENSCAPE_MAX_SEARCH` replaces the candidate budget.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "LENSCAPE_MAX_SEARCH";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidates (vectors, sign assignments, search nodes)
    /// a single search may visit.
    pub max_search: u64,
    /// Embedding oracle: maximum vertex count.
    pub embedding_vertices: usize,
    /// Embedding oracle: maximum total absolute weight.
    pub embedding_weight_sum: u64,
    /// Isometry search: maximum form rank.
    pub isometry_rank: usize,
    /// Configuration enumeration: maximum hole count.
    pub config_holes: usize,
    /// Sign-constraint builder: maximum base plus cover slice count.
    pub slice_count: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_search: 1 << 24,
            embedding_vertices: 5,
            embedding_weight_sum: 14,
            isometry_rank: 6,
            config_holes: 8,
            slice_count: 20,
        }
    }
}

impl Limits {
    /// Defaults, with `max_search` taken from `LENSCAPE_MAX_SEARCH` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(ENV_VAR) {
            limits.max_search = raw.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("{ENV_VAR} must be a non-negative integer, got {raw:?}"))
            })?;
        }
        Ok(limits)
    }

    pub(crate) fn check(&self, what: &str, needed: u64) -> Result<()> {
        if needed > self.max_search {
            return Err(Error::ResourceLimit(format!(
                "{what} needs {needed} candidates, budget is {}",
                self.max_search
            )));
        }
        Ok(())
    }
}

/// Counts visited nodes and trips once the budget is spent.
#[derive(Debug)]
pub(crate) struct Budget {
    left: u64,
    what: &'static str,
}

impl Budget {
    pub fn new(limits: &Limits, what: &'static str) -> Self {
        Budget { left: limits.max_search, what }
    }

    pub fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::ResourceLimit(format!("{} exhausted its search budget", self.what)));
        }
        self.left -= 1;
        Ok(())
    }
}
