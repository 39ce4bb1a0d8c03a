//! Resource limits shared by every exponential construction in the crate.

use crate::error::{Error, Result};

/// Environment variable that overrides the default budgets.
///
/// Accepted forms: a bare integer (applied to every limit), or a comma list
/// such as `power=100000,nodes=5000000,enum=20000`.
pub const BUDGET_ENV: &str = "PCSPLAB_BUDGET";

/// Limits for homomorphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomSearchConfig {
    /// Maximum number of branching nodes across one call.
    pub node_limit: u64,
    /// Maximum number of results an enumeration may produce.
    pub enumeration_cap: usize,
}

impl Default for HomSearchConfig {
    fn default() -> Self {
        HomSearchConfig {
            node_limit: 10_000_000,
            enumeration_cap: 1_000_000,
        }
    }
}

impl HomSearchConfig {
    pub fn new(node_limit: u64, enumeration_cap: usize) -> Self {
        assert!(node_limit >= 1 && enumeration_cap >= 1);
        HomSearchConfig {
            node_limit,
            enumeration_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Cap on the number of domain elements of any materialized power.
    pub max_power_elements: usize,
    /// Cap on the number of tuples of a single materialized power relation.
    pub max_power_tuples: usize,
    pub search: HomSearchConfig,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_power_elements: 1_000_000,
            max_power_tuples: 10_000_000,
            search: HomSearchConfig::default(),
        }
    }
}

impl Budget {
    /// Default budget, overridden by `PCSPLAB_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(all) = spec.parse::<u64>() {
            let all = all.max(1);
            self.max_power_elements = all as usize;
            self.max_power_tuples = all as usize;
            self.search.node_limit = all;
            self.search.enumeration_cap = all as usize;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(0, format!("bad budget entry `{part}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad budget value `{value}`")))?;
            let value = value.max(1);
            match key.trim() {
                "power" => self.max_power_elements = value as usize,
                "tuples" => self.max_power_tuples = value as usize,
                "nodes" => self.search.node_limit = value,
                "enum" => self.search.enumeration_cap = value as usize,
                other => return Err(Error::parse(0, format!("unknown budget key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check_power(&self, what: &'static str, base: usize, exponent: usize) -> Result<usize> {
        let needed = checked_pow(base, exponent);
        match needed {
            Some(n) if n <= self.max_power_elements as u128 => Ok(n as usize),
            _ => Err(Error::BudgetExceeded {
                what,
                needed: needed.unwrap_or(u128::MAX),
                cap: self.max_power_elements as u128,
            }),
        }
    }

    pub(crate) fn check_tuples(&self, what: &'static str, base: usize, exponent: usize) -> Result<usize> {
        let needed = checked_pow(base, exponent);
        match needed {
            Some(n) if n <= self.max_power_tuples as u128 => Ok(n as usize),
            _ => Err(Error::BudgetExceeded {
                what,
                needed: needed.unwrap_or(u128::MAX),
                cap: self.max_power_tuples as u128,
            }),
        }
    }
}

pub(crate) fn checked_pow(base: usize, exponent: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
