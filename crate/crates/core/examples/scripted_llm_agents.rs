//! Language-model agents without a model server: a scripted backend answers
//! prompts by glob rule, every exchange goes to a JSON-lines audit log, and
//! replies without a clear yes/no fall back to the heuristic.

use depin_sim::agents::{HeuristicPolicy, LlmPolicy, LlmSettings};
use depin_sim::engine::{run_with_policy, SimulationConfig};
use depin_sim::llm_gateway::{AuditedBackend, ScriptedBackend};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SimulationConfig {
        horizon_months: 24,
        ..SimulationConfig::default()
    };

    // enthusiastic about entering, undecided about leaving
    let backend = ScriptedBackend::from_rules(
        [("*enter the system*", "Yes, absolutely."), ("*exit the system*", "Hmm, hard to say.")],
        None,
    );
    let log = std::env::temp_dir().join("depin-sim-audit.jsonl");
    let _ = std::fs::remove_file(&log);
    let policy = LlmPolicy::new(AuditedBackend::new(backend, &log)?, LlmSettings::default());

    let llm = run_with_policy(&config, &policy)?;
    let heuristic = run_with_policy(&config, &HeuristicPolicy)?;

    println!("month  llm nodes  heuristic nodes  fallbacks");
    for (a, (b, ev)) in llm.states.iter().zip(heuristic.states.iter().zip(&llm.events)).step_by(3) {
        println!("{:>5} {:>10} {:>16} {:>10}", a.month, a.active_nodes, b.active_nodes, ev.fallbacks);
    }
    println!("total fallbacks: {}", llm.total_fallbacks());

    let text = std::fs::read_to_string(&log)?;
    println!("{} exchanges logged to {}; first:", text.lines().count(), log.display());
    println!("{}", text.lines().next().unwrap_or_default());
    Ok(())
}
