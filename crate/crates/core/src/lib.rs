//! Discrete-time simulator of a decentralized physical infrastructure
//! (DePIN) token economy.
//!
//! Node providers join and leave a network depending on how its revenue
//! compares with their costs; growth capitalists bring capital that sets the
//! token price; vesting schedules release the fixed token supply. Decisions
//! come from either a rule-based policy or a language model reached through
//! [`llm_gateway`]. Runs are fully determined by their config and seed.
//!
//! ```
//! use depin_sim::engine::{run, SimulationConfig};
//!
//! let config = SimulationConfig { horizon_months: 12, ..SimulationConfig::default() };
//! let trajectory = run(&config).unwrap();
//! assert_eq!(trajectory.states.len(), 12);
//! let metrics = trajectory.metrics.unwrap();
//! assert!(metrics.inclusion.unwrap() > 0.0);
//! ```

pub mod agents;
pub mod engine;
pub mod error;
pub mod io;
pub mod llm_gateway;
pub mod market;
pub mod metrics;
pub mod tokenomics;

pub use error::{Error, Result};
