//! How patience shapes churn. Revenue per user is cut and node costs raised
//! so that revenue per node drops below tolerance once the network grows.
//! Each cell averages several seeds, run in parallel.

use depin_sim::agents::HeuristicPolicy;
use depin_sim::engine::{run_with_policy, SimulationConfig};
use rayon::prelude::*;

const SEEDS: u64 = 8;

fn main() -> depin_sim::Result<()> {
    let mut base = SimulationConfig::default();
    base.revenue.user_revenue_factor = 0.01;
    base.revenue.node_operating_cost = 2_000.0;

    println!("patience  entries   exits  final nodes  node-months  inclusion");
    for patience in 1..=6 {
        let runs = (0..SEEDS)
            .into_par_iter()
            .map(|seed| {
                let mut config = base.clone();
                config.seed = seed;
                config.nodes.patience = patience;
                run_with_policy(&config, &HeuristicPolicy)
            })
            .collect::<depin_sim::Result<Vec<_>>>()?;

        let mean = |f: &dyn Fn(&depin_sim::engine::Trajectory) -> f64| runs.iter().map(f).sum::<f64>() / SEEDS as f64;
        println!(
            "{patience:>8} {:>8.1} {:>7.1} {:>12.1} {:>12.0} {:>10.4}",
            mean(&|t| t.cumulative_entries() as f64),
            mean(&|t| t.events.iter().map(|e| e.exits).sum::<u64>() as f64),
            mean(&|t| t.states.last().map_or(0.0, |s| s.active_nodes as f64)),
            mean(&|t| t.states.iter().map(|s| s.active_nodes as f64).sum()),
            mean(&|t| t.metrics.as_ref().and_then(|m| m.inclusion).unwrap_or(f64::NAN)),
        );
    }
    Ok(())
}
