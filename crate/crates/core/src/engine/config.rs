use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::agents::{GcParams, NodeParams};
use crate::error::{Error, Result};
use crate::market::RevenueParams;
use crate::metrics::MonthWindow;
use crate::tokenomics::TokenAllocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    #[default]
    Heuristic,
    Llm,
}

impl std::str::FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heuristic" => Ok(PolicyKind::Heuristic),
            "llm" => Ok(PolicyKind::Llm),
            other => Err(Error::invalid(format!(
                "unknown policy {other:?}; expected heuristic or llm"
            ))),
        }
    }
}

/// Language-model backend selection. A `script` takes precedence over an
/// HTTP endpoint; the endpoint and key fall back to `DEPIN_LLM_ENDPOINT` and
/// `DEPIN_LLM_KEY`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlmConfig {
    pub endpoint: Option<String>,
    pub api_key: Option<String>,
    pub script: Option<PathBuf>,
    pub model: String,
    pub max_tokens: u32,
    pub temperature: f64,
    pub timeout_ms: u64,
    pub retries: u32,
    pub backoff_ms: u64,
}

impl Default for LlmConfig {
    fn default() -> Self {
        Self {
            endpoint: None,
            api_key: None,
            script: None,
            model: crate::llm_gateway::DEFAULT_MODEL.to_owned(),
            max_tokens: 8,
            temperature: 0.0,
            timeout_ms: 10_000,
            retries: 2,
            backoff_ms: 250,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    pub horizon_months: u32,
    pub initial_nodes: u64,
    /// Price in force before month 1.
    pub initial_price: f64,
    pub seed: u64,
    pub policy: PolicyKind,
    pub allocation: TokenAllocation,
    pub revenue: RevenueParams,
    pub nodes: NodeParams,
    pub growth_capital: GcParams,
    /// Share of month-1 circulating supply put on sale at launch.
    pub initial_sale_fraction: f64,
    /// Evaluate agent decisions on the rayon pool.
    pub parallel_agents: bool,
    /// Months over which stability is measured; the whole run when absent.
    pub stability_window: Option<MonthWindow>,
    pub llm: LlmConfig,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            horizon_months: 96,
            initial_nodes: 50,
            initial_price: 1.0,
            seed: 42,
            policy: PolicyKind::Heuristic,
            allocation: TokenAllocation::default(),
            revenue: RevenueParams::default(),
            nodes: NodeParams::default(),
            growth_capital: GcParams::default(),
            initial_sale_fraction: 0.05,
            parallel_agents: false,
            stability_window: None,
            llm: LlmConfig::default(),
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, e: Error| Error::config(format!("{name}: {e}"));
        if self.horizon_months == 0 {
            return Err(Error::config("horizon_months must be >= 1"));
        }
        if !(self.initial_price.is_finite() && self.initial_price > 0.0) {
            return Err(Error::config("initial_price must be positive and finite"));
        }
        if !(0.0..=1.0).contains(&self.initial_sale_fraction) {
            return Err(Error::config("initial_sale_fraction must lie in [0, 1]"));
        }
        self.allocation.validate().map_err(|e| field("allocation", e))?;
        self.revenue.validate().map_err(|e| field("revenue", e))?;
        self.nodes.validate().map_err(|e| field("nodes", e))?;
        self.growth_capital
            .validate()
            .map_err(|e| field("growth_capital", e))?;
        if let Some(w) = self.stability_window {
            if w.first > w.last {
                return Err(Error::config("stability_window.first must be <= last"));
            }
        }
        let llm = &self.llm;
        if llm.max_tokens == 0 || !(llm.temperature.is_finite() && llm.temperature >= 0.0) {
            return Err(Error::config("llm: max_tokens must be >= 1 and temperature >= 0"));
        }
        Ok(())
    }
}
