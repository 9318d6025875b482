use serde::{Deserialize, Serialize};

use super::SimulationConfig;
use crate::error::Result;
use crate::market::MarketState;
use crate::metrics::MetricReport;

/// Column order of the trajectory CSV.
pub const CSV_COLUMNS: [&str; 12] = [
    "month",
    "nodes",
    "users",
    "price",
    "circ_supply",
    "market_cap",
    "diluted_cap",
    "E_total",
    "tokens_on_sale",
    "entries",
    "exits",
    "fallbacks",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MonthEvents {
    pub month: u32,
    pub entries: u64,
    pub exits: u64,
    pub gc_arrivals: u64,
    pub gc_expiries: u64,
    pub fallbacks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub seed: u64,
    pub policy: String,
    pub config: SimulationConfig,
    pub initial_nodes: u64,
    /// One committed state per simulated month, months 1..=horizon.
    pub states: Vec<MarketState>,
    pub events: Vec<MonthEvents>,
    pub metrics: Option<MetricReport>,
}

impl Trajectory {
    pub fn cumulative_entries(&self) -> u64 {
        self.events.iter().map(|e| e.entries).sum()
    }

    pub fn total_fallbacks(&self) -> u64 {
        self.events.iter().map(|e| e.fallbacks).sum()
    }

    pub fn prices(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.token_price).collect()
    }

    /// Inclusion after each month, counting every node that ever joined.
    pub fn inclusion_series(&self) -> Vec<f64> {
        let mut joined = 0;
        self.events
            .iter()
            .map(|e| {
                joined += e.entries;
                let total = self.initial_nodes + joined;
                if total == 0 {
                    0.0
                } else {
                    joined as f64 / total as f64
                }
            })
            .collect()
    }

    /// Month series only, without config echo or metrics; two runs with the
    /// same dynamics produce identical bytes here.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(CSV_COLUMNS)?;
        for (s, e) in self.states.iter().zip(&self.events) {
            out.write_record([
                s.month.to_string(),
                s.active_nodes.to_string(),
                s.users.to_string(),
                s.token_price.to_string(),
                s.circulating_supply.to_string(),
                s.market_cap.to_string(),
                s.diluted_market_cap.to_string(),
                s.total_gc_endowment.to_string(),
                s.tokens_on_sale.to_string(),
                e.entries.to_string(),
                e.exits.to_string(),
                e.fallbacks.to_string(),
            ])?;
        }
        let bytes = out
            .into_inner()
            .map_err(|e| crate::error::Error::io("trajectory csv", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// States and events as JSON, again without config echo.
    pub fn dynamics_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&(&self.states, &self.events))?)
    }
}
