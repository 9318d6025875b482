//! Files and commands: the run-config document, CSV series, SVG charts and
//! the `run` / `compare` / `vesting` / `score` entry points used by the CLI.

mod charts;
mod commands;
mod config_file;
mod prices;
pub mod svg;

use std::path::Path;

use crate::error::{Error, Result};

pub use charts::{compare_chart, trajectory_charts, vesting_chart};
pub use commands::{
    cmd_compare, cmd_run, cmd_score, cmd_vesting, exit_code, vesting_csv, CellSummary,
    CompareArgs, CompareOutcome, RunArgs, RunOutcome, ScoreArgs, VestingArgs, COMPARE_COLUMNS,
    EXIT_OK, EXIT_RUNTIME, EXIT_USAGE,
};
pub use config_file::{config_reference, load_run_config, OutputConfig, RunConfigFile};
pub use prices::{read_price_series, PriceSeries};

/// Writes `contents` to a sibling temp file and renames it over `path`, so
/// readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp-{}", std::process::id()));
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
