//! One 96-month run with heuristic node providers, written as CSV, JSON and
//! SVG charts.
//!
//! ```text
//! cargo run --example heuristic_run [out_dir]
//! ```

use std::path::PathBuf;

use depin_sim::io::{cmd_run, RunArgs};

fn main() -> depin_sim::Result<()> {
    let out_dir = std::env::args().nth(1).map_or_else(|| PathBuf::from("out/heuristic"), PathBuf::from);
    let outcome = cmd_run(&RunArgs {
        seed: Some(42),
        out_dir: Some(out_dir),
        charts: Some(true),
        ..RunArgs::default()
    })?;

    let t = &outcome.trajectory;
    for s in t.states.iter().filter(|s| s.month % 12 == 0) {
        println!(
            "month {:>3}: {:>5} nodes, price {:.4}, market cap {:.3e}",
            s.month, s.active_nodes, s.token_price, s.market_cap
        );
    }
    let m = t.metrics.as_ref().expect("runs attach metrics");
    println!("efficiency {:?}", m.efficiency);
    println!("inclusion  {:?}", m.inclusion);
    println!("stability  {:?}", m.stability);
    for path in &outcome.written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
