//! Every config key with its default, and a config file that overrides a
//! few of them.

use depin_sim::io::{config_reference, RunConfigFile};

const SAMPLE: &str = r#"{
  "simulation": {
    "horizon_months": 60,
    "seed": 7,
    "revenue": { "node_operating_cost": 2000.0, "user_revenue_factor": 0.01 },
    "nodes": { "patience": 3 },
    "stability_window": { "first": 13, "last": 60 }
  },
  "output": { "out_dir": "out/sample", "charts": false }
}"#;

fn main() -> depin_sim::Result<()> {
    print!("{}", config_reference());
    let file = RunConfigFile::parse(SAMPLE, "sample")?;
    println!("\nparsed sample: {} months, patience {}", file.simulation.horizon_months, file.simulation.nodes.patience);

    let typo = RunConfigFile::parse(r#"{"simulation": {"horizon": 60}}"#, "typo.json");
    println!("a misspelt key is rejected: {}", typo.unwrap_err());
    Ok(())
}
