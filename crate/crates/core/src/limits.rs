//! Caps on exponential searches, overridable from the environment.

use std::env;

pub const ENV_MAX_STABLE_SETS: &str = "FRACDOM_MAX_STABLE_SETS";
pub const ENV_MAX_SEARCH_NODES: &str = "FRACDOM_MAX_SEARCH_NODES";
pub const ENV_MAX_VERTICES: &str = "FRACDOM_MAX_VERTICES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest maximal-stable-set family that may be enumerated.
    pub max_stable_sets: usize,
    /// Node budget for one dominating-set search.
    pub max_search_nodes: u64,
    /// Largest generated instance the suites may build.
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_stable_sets: 1_000_000,
            max_search_nodes: 2_000_000_000,
            max_vertices: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("environment variable {name}: cannot parse `{value}` as a count")]
pub struct BadLimit {
    pub name: &'static str,
    pub value: String,
}

impl Limits {
    pub fn from_env() -> Result<Self, BadLimit> {
        fn read<T: std::str::FromStr>(name: &'static str, dflt: T) -> Result<T, BadLimit> {
            match env::var(name) {
                Ok(value) => value.trim().parse().map_err(|_| BadLimit { name, value }),
                Err(_) => Ok(dflt),
            }
        }
        let d = Limits::default();
        Ok(Limits {
            max_stable_sets: read(ENV_MAX_STABLE_SETS, d.max_stable_sets)?,
            max_search_nodes: read(ENV_MAX_SEARCH_NODES, d.max_search_nodes)?,
            max_vertices: read(ENV_MAX_VERTICES, d.max_vertices)?,
        })
    }
}

/// An exponential search would exceed its configured cap.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CapError {
    #[error("{what} exceeds the cap of {limit}")]
    TooLarge { what: &'static str, limit: u64 },
    #[error("{what} exceeds the budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
}
