//! Token release schedule for the default 1e9 supply.
//!
//! ```text
//! cargo run --example vesting_schedule [out_dir]
//! ```

use std::path::PathBuf;

use depin_sim::io::{cmd_vesting, VestingArgs};

fn main() -> depin_sim::Result<()> {
    let out_dir = std::env::args().nth(1).map_or_else(|| PathBuf::from("out/vesting"), PathBuf::from);
    let (rows, written) = cmd_vesting(&VestingArgs {
        horizon: 144,
        out_dir: Some(out_dir),
        charts: Some(true),
        ..VestingArgs::default()
    })?;

    println!("{:>5} {:>14} {:>14} {:>14} {:>14}", "month", "team", "vc", "node", "circulating");
    for row in rows.iter().filter(|r| [1, 11, 12, 13, 24, 48, 49, 96, 144].contains(&r.month)) {
        println!(
            "{:>5} {:>14.0} {:>14.0} {:>14.0} {:>14.0}",
            row.month, row.team_cumulative, row.vc_cumulative, row.node_cumulative, row.circulating
        );
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
