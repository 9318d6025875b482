use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::charts::{compare_chart, trajectory_charts, vesting_chart};
use super::config_file::{load_run_config, OutputConfig};
use super::prices::read_price_file;
use super::write_atomic;
use crate::engine::{build_policy, run_with_policy, PolicyKind, SimulationConfig, Trajectory};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricReport};
use crate::tokenomics::{release_table, ReleaseRow, TokenAllocation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// 2 for bad input or config, 3 for failures while running.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_RUNTIME
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunArgs {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub policy: Option<PolicyKind>,
    pub patience: Option<u32>,
    pub out_dir: Option<PathBuf>,
    pub charts: Option<bool>,
    pub audit_log: Option<PathBuf>,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub written: Vec<PathBuf>,
}

fn resolve(
    config: Option<&Path>,
    seed: Option<u64>,
    policy: Option<PolicyKind>,
    patience: Option<u32>,
    out_dir: Option<&Path>,
    charts: Option<bool>,
    audit_log: Option<&Path>,
) -> Result<(SimulationConfig, OutputConfig)> {
    let file = load_run_config(config)?;
    let mut sim = file.simulation;
    let mut output = file.output;
    if let Some(s) = seed {
        sim.seed = s;
    }
    if let Some(p) = policy {
        sim.policy = p;
    }
    if let Some(p) = patience {
        sim.nodes.patience = p;
    }
    if let Some(d) = out_dir {
        output.out_dir = d.to_owned();
    }
    if let Some(c) = charts {
        output.charts = c;
    }
    if let Some(a) = audit_log {
        output.audit_log = Some(a.to_owned());
    }
    sim.validate()?;
    Ok((sim, output))
}

/// Policy construction problems (missing backend, unreadable script) are
/// config errors, not runtime ones.
fn policy_for(config: &SimulationConfig, audit_log: Option<&Path>) -> Result<Box<dyn crate::agents::DecisionPolicy>> {
    build_policy(config, audit_log).map_err(|e| match e {
        e @ Error::Config(_) => e,
        other => Error::config(other.to_string()),
    })
}

fn write_text(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    write_atomic(&path, text.as_bytes())?;
    written.push(path);
    Ok(())
}

/// Runs one simulation and writes `trajectory.csv`, `trajectory.json`,
/// `metrics.json` and, when enabled, SVG charts drawn from the CSV.
pub fn cmd_run(args: &RunArgs) -> Result<RunOutcome> {
    let (config, output) = resolve(
        args.config.as_deref(),
        args.seed,
        args.policy,
        args.patience,
        args.out_dir.as_deref(),
        args.charts,
        args.audit_log.as_deref(),
    )?;
    let policy = policy_for(&config, output.audit_log.as_deref())?;
    let trajectory = run_with_policy(&config, &*policy)?;

    let dir = &output.out_dir;
    let mut written = Vec::new();
    let csv = trajectory.to_csv()?;
    write_text(dir.join("trajectory.csv"), &csv, &mut written)?;
    write_text(
        dir.join("trajectory.json"),
        &serde_json::to_string_pretty(&trajectory)?,
        &mut written,
    )?;
    write_text(
        dir.join("metrics.json"),
        &serde_json::to_string_pretty(&trajectory.metrics)?,
        &mut written,
    )?;
    if output.charts {
        for (name, svg) in trajectory_charts(&csv)? {
            write_text(dir.join("charts").join(name), &svg, &mut written)?;
        }
    }
    Ok(RunOutcome { trajectory, written })
}

#[derive(Debug, Clone, Default)]
pub struct CompareArgs {
    pub config: Option<PathBuf>,
    pub patience: Vec<u32>,
    pub seeds: u32,
    pub out_dir: Option<PathBuf>,
    pub charts: Option<bool>,
    pub audit_log: Option<PathBuf>,
}

pub const COMPARE_COLUMNS: [&str; 11] = [
    "policy",
    "patience",
    "seeds",
    "efficiency_mean",
    "efficiency_std",
    "inclusion_mean",
    "inclusion_std",
    "stability_mean",
    "stability_std",
    "fallbacks_mean",
    "error",
];

/// Mean and sample standard deviation of one metric over a cell's seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spread {
    pub mean: f64,
    pub std: f64,
}

impl Spread {
    fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Some(Self { mean, std })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub policy: PolicyKind,
    pub patience: u32,
    pub seeds: Vec<u64>,
    pub efficiency: Option<Spread>,
    pub inclusion: Option<Spread>,
    pub stability: Option<Spread>,
    pub fallbacks_mean: Option<f64>,
    /// First failure among the cell's runs; the cell has no metrics then.
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct CompareOutcome {
    pub cells: Vec<CellSummary>,
    pub written: Vec<PathBuf>,
}

impl CompareOutcome {
    pub fn failed(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }
}

fn summarize(policy: PolicyKind, patience: u32, seeds: Vec<u64>, runs: Vec<Result<Trajectory>>) -> CellSummary {
    let mut cell = CellSummary {
        policy,
        patience,
        seeds,
        efficiency: None,
        inclusion: None,
        stability: None,
        fallbacks_mean: None,
        error: None,
    };
    let mut reports = Vec::new();
    let mut fallbacks = Vec::new();
    for run in runs {
        match run {
            Ok(t) => {
                fallbacks.push(t.total_fallbacks() as f64);
                reports.push(t.metrics.expect("run attaches metrics"));
            }
            Err(e) => {
                cell.error = Some(e.to_string());
                return cell;
            }
        }
    }
    let pick = |f: fn(&MetricReport) -> Option<f64>| -> Vec<f64> { reports.iter().filter_map(f).collect() };
    cell.efficiency = Spread::of(&pick(|r| r.efficiency));
    cell.inclusion = Spread::of(&pick(|r| r.inclusion));
    cell.stability = Spread::of(&pick(|r| r.stability));
    cell.fallbacks_mean = Spread::of(&fallbacks).map(|s| s.mean);
    cell
}

fn compare_csv(cells: &[CellSummary]) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(COMPARE_COLUMNS)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for c in cells {
        let policy = match c.policy {
            PolicyKind::Heuristic => "heuristic",
            PolicyKind::Llm => "llm",
        };
        out.write_record([
            policy.to_owned(),
            c.patience.to_string(),
            c.seeds.len().to_string(),
            opt(c.efficiency.map(|s| s.mean)),
            opt(c.efficiency.map(|s| s.std)),
            opt(c.inclusion.map(|s| s.mean)),
            opt(c.inclusion.map(|s| s.std)),
            opt(c.stability.map(|s| s.mean)),
            opt(c.stability.map(|s| s.std)),
            opt(c.fallbacks_mean),
            c.error.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = out
        .into_inner()
        .map_err(|e| Error::io("compare csv", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Runs the heuristic benchmark (patience 1) and the language-model policy at
/// each requested patience, `seeds` runs per cell starting from the config
/// seed. Writes one JSON file per cell, `compare.csv` and `compare.svg`.
pub fn cmd_compare(args: &CompareArgs) -> Result<CompareOutcome> {
    if args.patience.is_empty() {
        return Err(Error::invalid("compare needs at least one patience value"));
    }
    if args.seeds == 0 {
        return Err(Error::invalid("compare needs at least one seed per cell"));
    }
    let (base, output) = resolve(
        args.config.as_deref(),
        None,
        None,
        None,
        args.out_dir.as_deref(),
        args.charts,
        args.audit_log.as_deref(),
    )?;
    let mut cells = vec![(PolicyKind::Heuristic, 1)];
    cells.extend(args.patience.iter().map(|&p| (PolicyKind::Llm, p)));
    // surface missing backends and bad patience values before any run starts
    for &(policy, patience) in &cells {
        let mut c = base.clone();
        c.policy = policy;
        c.nodes.patience = patience;
        c.validate()?;
        policy_for(&c, None)?;
    }

    let seeds: Vec<u64> = (0..u64::from(args.seeds)).map(|i| base.seed.wrapping_add(i)).collect();
    let audit = output.audit_log.as_deref();
    let summaries: Vec<CellSummary> = cells
        .par_iter()
        .map(|&(policy, patience)| {
            let runs = seeds
                .par_iter()
                .map(|&seed| {
                    let mut c = base.clone();
                    c.policy = policy;
                    c.nodes.patience = patience;
                    c.seed = seed;
                    let p = policy_for(&c, audit)?;
                    run_with_policy(&c, &*p)
                })
                .collect();
            summarize(policy, patience, seeds.clone(), runs)
        })
        .collect();

    let dir = &output.out_dir;
    let mut written = Vec::new();
    for cell in &summaries {
        let name = format!(
            "{}_p{}.json",
            if cell.policy == PolicyKind::Llm { "llm" } else { "heuristic" },
            cell.patience
        );
        write_text(dir.join("cells").join(name), &serde_json::to_string_pretty(cell)?, &mut written)?;
    }
    let csv = compare_csv(&summaries)?;
    write_text(dir.join("compare.csv"), &csv, &mut written)?;
    if output.charts {
        write_text(dir.join("compare.svg"), &compare_chart(&csv)?, &mut written)?;
    }
    Ok(CompareOutcome {
        cells: summaries,
        written,
    })
}

#[derive(Debug, Clone)]
pub struct VestingArgs {
    pub config: Option<PathBuf>,
    pub horizon: u32,
    pub total_supply: Option<f64>,
    pub team_fraction: Option<f64>,
    pub vc_fraction: Option<f64>,
    pub node_fraction: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub charts: Option<bool>,
}

impl Default for VestingArgs {
    fn default() -> Self {
        Self {
            config: None,
            horizon: 96,
            total_supply: None,
            team_fraction: None,
            vc_fraction: None,
            node_fraction: None,
            out_dir: None,
            charts: None,
        }
    }
}

pub fn vesting_csv(rows: &[ReleaseRow]) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    for row in rows {
        out.serialize(row)?;
    }
    let bytes = out
        .into_inner()
        .map_err(|e| Error::io("vesting csv", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Per-month release table (`vesting.csv`) plus a cumulative chart.
pub fn cmd_vesting(args: &VestingArgs) -> Result<(Vec<ReleaseRow>, Vec<PathBuf>)> {
    let (config, output) = resolve(args.config.as_deref(), None, None, None, args.out_dir.as_deref(), args.charts, None)?;
    let alloc = TokenAllocation {
        total_supply: args.total_supply.unwrap_or(config.allocation.total_supply),
        team_fraction: args.team_fraction.unwrap_or(config.allocation.team_fraction),
        vc_fraction: args.vc_fraction.unwrap_or(config.allocation.vc_fraction),
        node_fraction: args.node_fraction.unwrap_or(config.allocation.node_fraction),
        ..config.allocation
    };
    let rows = release_table(&alloc, args.horizon)?;
    let csv = vesting_csv(&rows)?;
    let mut written = Vec::new();
    write_text(output.out_dir.join("vesting.csv"), &csv, &mut written)?;
    if output.charts {
        write_text(output.out_dir.join("vesting.svg"), &vesting_chart(&csv)?, &mut written)?;
    }
    Ok((rows, written))
}

#[derive(Debug, Clone, Default)]
pub struct ScoreArgs {
    pub prices: PathBuf,
    pub column: Option<String>,
    /// Circulating supply for efficiency.
    pub circulating: Option<f64>,
    /// Price for efficiency; the last price of the series when absent.
    pub price: Option<f64>,
}

/// Scores an external price series: stability from the series, efficiency
/// from circulating supply times price when a supply is given.
pub fn cmd_score(args: &ScoreArgs) -> Result<MetricReport> {
    let series = read_price_file(&args.prices, args.column.as_deref())?;
    let stability = metrics::optional(metrics::stability(&series.prices))?;
    let efficiency = match args.circulating {
        Some(circ) => {
            let price = args.price.unwrap_or(*series.prices.last().expect("series is non-empty"));
            if !(circ.is_finite() && circ >= 0.0 && price.is_finite() && price >= 0.0) {
                return Err(Error::invalid("circulating supply and price must be finite and >= 0"));
            }
            Some(metrics::efficiency(circ, price))
        }
        None => None,
    };
    Ok(MetricReport {
        efficiency,
        inclusion: None,
        stability,
        n_init: None,
        n_total: None,
        n_ext: None,
        window: None,
    })
}
