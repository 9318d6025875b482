use std::fmt::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::SimulationConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub out_dir: PathBuf,
    pub charts: bool,
    /// JSON-lines log of every language-model exchange.
    pub audit_log: Option<PathBuf>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            out_dir: PathBuf::from("out"),
            charts: true,
            audit_log: None,
        }
    }
}

/// The JSON run-config document. Every key is optional; unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub simulation: SimulationConfig,
    pub output: OutputConfig,
}

impl RunConfigFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let file: RunConfigFile =
            serde_json::from_str(text).map_err(|e| Error::config(format!("{origin}: {e}")))?;
        file.simulation
            .validate()
            .map_err(|e| Error::config(format!("{origin}: simulation.{e}")))?;
        Ok(file)
    }
}

/// Reads a run config; `None` gives the defaults.
pub fn load_run_config(path: Option<&Path>) -> Result<RunConfigFile> {
    match path {
        None => Ok(RunConfigFile::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::config(format!("cannot read {}: {e}", p.display())))?;
            RunConfigFile::parse(&text, &p.display().to_string())
        }
    }
}

const DESCRIPTIONS: &[(&str, &str)] = &[
    ("simulation.horizon_months", "Months to simulate."),
    ("simulation.initial_nodes", "Nodes deployed by the core team before launch."),
    ("simulation.initial_price", "Token price in force before month 1."),
    ("simulation.seed", "Root seed; every random draw derives from it."),
    ("simulation.policy", "Decision policy: heuristic or llm."),
    ("simulation.allocation.total_supply", "Fixed token supply."),
    ("simulation.allocation.team_fraction", "Core-team share of supply."),
    ("simulation.allocation.vc_fraction", "Venture-capital share of supply."),
    ("simulation.allocation.node_fraction", "Node-provider share of supply."),
    ("simulation.allocation.team_vesting", "Team release schedule (cliff_linear)."),
    ("simulation.allocation.vc_vesting", "VC release schedule (cliff_linear)."),
    ("simulation.allocation.node_vesting", "Node emission schedule (halving_emission)."),
    ("simulation.revenue.user_revenue_factor", "Revenue per user per month (k)."),
    ("simulation.revenue.node_operating_cost", "Baseline monthly node cost."),
    ("simulation.nodes.cost_spread", "Node costs are uniform in [1-s, 1+s] x baseline cost."),
    ("simulation.nodes.tolerance_min", "Lower bound of drawn risk tolerance."),
    ("simulation.nodes.tolerance_max", "Upper bound of drawn risk tolerance."),
    ("simulation.nodes.patience", "Consecutive exit signals before a node leaves."),
    ("simulation.nodes.entry_pool_size", "Candidate nodes considering entry each month."),
    ("simulation.growth_capital.arrival_rate", "Mean growth-capitalist arrivals per month (Poisson)."),
    ("simulation.growth_capital.endowment", "Log-normal endowment parameters (mu, sigma)."),
    ("simulation.growth_capital.lifespan", "Log-normal lifespan parameters in months (mu, sigma)."),
    ("simulation.initial_sale_fraction", "Share of month-1 supply on sale at launch."),
    ("simulation.parallel_agents", "Evaluate agent decisions in parallel."),
    ("simulation.stability_window", "Inclusive {first, last} months for stability; null = whole run."),
    ("simulation.llm.endpoint", "Completions server base URL; falls back to DEPIN_LLM_ENDPOINT."),
    ("simulation.llm.api_key", "Bearer token; falls back to DEPIN_LLM_KEY."),
    ("simulation.llm.script", "Scripted-backend JSON file; takes precedence over endpoint."),
    ("simulation.llm.model", "Model name sent with each request."),
    ("simulation.llm.max_tokens", "Completion length limit."),
    ("simulation.llm.temperature", "Sampling temperature."),
    ("simulation.llm.timeout_ms", "Per-attempt HTTP timeout."),
    ("simulation.llm.retries", "Retries after transport failures."),
    ("simulation.llm.backoff_ms", "First retry delay; doubles each retry."),
    ("output.out_dir", "Directory for CSV, JSON and SVG outputs."),
    ("output.charts", "Write SVG charts."),
    ("output.audit_log", "JSON-lines log of language-model exchanges."),
];

fn leaves(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let documented = DESCRIPTIONS.iter().any(|(k, _)| *k == prefix);
    match value {
        Value::Object(map) if !documented => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                leaves(&key, v, out);
            }
        }
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

/// Markdown table of every config key with its default and meaning.
pub fn config_reference() -> String {
    let defaults = serde_json::to_value(RunConfigFile::default()).expect("config serializes");
    let mut rows = Vec::new();
    leaves("", &defaults, &mut rows);
    let mut out = String::from("| key | default | meaning |\n|---|---|---|\n");
    for (key, default) in rows {
        let meaning = DESCRIPTIONS
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, d)| *d)
            .unwrap_or("");
        let _ = writeln!(out, "| `{key}` | `{default}` | {meaning} |");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_is_documented() {
        let reference = config_reference();
        for line in reference.lines().skip(2) {
            assert!(!line.ends_with("|  |"), "undocumented: {line}");
        }
        assert!(reference.contains("`simulation.horizon_months` | `96`"));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = RunConfigFile::parse("{\n  \"simulation\": {\n    \"seed\": ,\n  }\n}", "cfg.json").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfigFile::parse(r#"{"simulation": {"horizon": 3}}"#, "cfg.json").unwrap_err();
        assert!(err.to_string().contains("horizon"));
    }

    #[test]
    fn semantic_errors_are_config_errors() {
        let err = RunConfigFile::parse(r#"{"simulation": {"horizon_months": 0}}"#, "cfg.json").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }
}
