use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use depin_sim::engine::PolicyKind;
use depin_sim::io::{
    cmd_compare, cmd_run, cmd_score, cmd_vesting, config_reference, exit_code, CompareArgs, RunArgs, ScoreArgs,
    VestingArgs,
};

#[derive(Parser)]
#[command(name = "depin-sim", version, about = "DePIN tokenomics simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Heuristic,
    Llm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one run and write trajectory, metrics and charts.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        policy: Option<Policy>,
        #[arg(long)]
        patience: Option<u32>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum)]
        charts: Option<Switch>,
        #[arg(long)]
        audit_log: Option<PathBuf>,
    },
    /// Heuristic benchmark against the language-model policy at several patience values.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated patience values for the language-model cells.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        patience: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        seeds: u32,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum)]
        charts: Option<Switch>,
        #[arg(long)]
        audit_log: Option<PathBuf>,
    },
    /// Per-month token release table for each stakeholder class.
    Vesting {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 96)]
        horizon: u32,
        #[arg(long)]
        total_supply: Option<f64>,
        #[arg(long)]
        team_fraction: Option<f64>,
        #[arg(long)]
        vc_fraction: Option<f64>,
        #[arg(long)]
        node_fraction: Option<f64>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum)]
        charts: Option<Switch>,
    },
    /// Stability (and optionally efficiency) of an external price series.
    Score {
        /// CSV file with a price column.
        prices: PathBuf,
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        circulating: Option<f64>,
        #[arg(long)]
        price: Option<f64>,
    },
    /// Print every config key with its default.
    Reference,
}

fn policy(p: Option<Policy>) -> Option<PolicyKind> {
    p.map(|p| match p {
        Policy::Heuristic => PolicyKind::Heuristic,
        Policy::Llm => PolicyKind::Llm,
    })
}

fn switch(s: Option<Switch>) -> Option<bool> {
    s.map(|s| matches!(s, Switch::On))
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            seed,
            policy: p,
            patience,
            out_dir,
            charts,
            audit_log,
        } => cmd_run(&RunArgs {
            config,
            seed,
            policy: policy(p),
            patience,
            out_dir,
            charts: switch(charts),
            audit_log,
        })
        .map(|o| {
            if o.trajectory.total_fallbacks() > 0 {
                eprintln!("warning: {} decisions fell back to the heuristic", o.trajectory.total_fallbacks());
            }
            print_paths(&o.written);
        }),
        Command::Compare {
            config,
            patience,
            seeds,
            out_dir,
            charts,
            audit_log,
        } => cmd_compare(&CompareArgs {
            config,
            patience,
            seeds,
            out_dir,
            charts: switch(charts),
            audit_log,
        })
        .and_then(|o| {
            print_paths(&o.written);
            for cell in o.cells.iter().filter(|c| c.error.is_some()) {
                eprintln!(
                    "error: cell {:?} patience {}: {}",
                    cell.policy,
                    cell.patience,
                    cell.error.as_deref().unwrap_or_default()
                );
            }
            match o.failed() {
                0 => Ok(()),
                n => Err(depin_sim::Error::InvalidState(format!("{n} compare cells failed"))),
            }
        }),
        Command::Vesting {
            config,
            horizon,
            total_supply,
            team_fraction,
            vc_fraction,
            node_fraction,
            out_dir,
            charts,
        } => cmd_vesting(&VestingArgs {
            config,
            horizon,
            total_supply,
            team_fraction,
            vc_fraction,
            node_fraction,
            out_dir,
            charts: switch(charts),
        })
        .map(|(_, written)| print_paths(&written)),
        Command::Score {
            prices,
            column,
            circulating,
            price,
        } => cmd_score(&ScoreArgs {
            prices,
            column,
            circulating,
            price,
        })
        .and_then(|r| {
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(())
        }),
        Command::Reference => {
            print!("{}", config_reference());
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
