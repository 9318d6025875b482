//! Node agents backed by an OpenAI-compatible completions server.
//!
//! ```text
//! DEPIN_LLM_ENDPOINT=http://localhost:8000 cargo run --example http_llm_agents
//! ```
//!
//! `DEPIN_LLM_KEY`, when set, is sent as a bearer token. Keep the horizon
//! short: every month asks one question per candidate and per active node.

use std::time::Duration;

use depin_sim::agents::{HeuristicPolicy, LlmPolicy, LlmSettings};
use depin_sim::engine::{run_with_policy, SimulationConfig};
use depin_sim::llm_gateway::{HttpBackend, HttpSettings, ENV_ENDPOINT, ENV_KEY};

fn main() -> depin_sim::Result<()> {
    let Ok(endpoint) = std::env::var(ENV_ENDPOINT) else {
        eprintln!("set {ENV_ENDPOINT} to the base URL of a completions server");
        std::process::exit(2);
    };
    let backend = HttpBackend::new(HttpSettings {
        api_key: std::env::var(ENV_KEY).ok(),
        timeout: Duration::from_secs(30),
        ..HttpSettings::new(endpoint)
    })?;
    println!("asking {}", backend.url());

    let config = SimulationConfig {
        horizon_months: 6,
        initial_nodes: 10,
        parallel_agents: true,
        ..SimulationConfig::default()
    };
    let llm = run_with_policy(&config, &LlmPolicy::new(backend, LlmSettings::default()))?;
    let heuristic = run_with_policy(&config, &HeuristicPolicy)?;
    for (a, b) in llm.states.iter().zip(&heuristic.states) {
        println!("month {}: llm {} nodes, heuristic {} nodes", a.month, a.active_nodes, b.active_nodes);
    }
    println!("{} replies could not be read and fell back", llm.total_fallbacks());
    Ok(())
}
