//! Node providers, growth capitalists and the policies that decide whether a
//! node enters or leaves the network.

mod growth;
mod heuristic;
mod llm;
mod node;
mod prompts;
mod round;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::llm_gateway::Verdict;

pub use growth::{
    spawn_growth_capitalists, total_endowment, GcParams, GrowthCapitalist, LogNormalParams,
};
pub use heuristic::{heuristic_entry, heuristic_exit, HeuristicPolicy};
pub use llm::{LlmPolicy, LlmSettings};
pub use node::{apply_patience, draw_node, NodeParams, NodeProvider};
pub use prompts::{render_entry_prompt, render_exit_prompt};
pub use round::{run_node_round, NodeRound};

/// What a policy is allowed to see when it decides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionContext {
    pub global_revenue: f64,
    pub node_cost: f64,
    pub tolerance: f64,
    pub month: u32,
}

impl DecisionContext {
    pub fn for_node(node: &NodeProvider, global_revenue: f64, month: u32) -> Self {
        Self {
            global_revenue,
            node_cost: node.cost,
            tolerance: node.tolerance,
            month,
        }
    }
}

/// A verdict plus whether it came from the heuristic fallback because the
/// policy's own answer could not be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub fell_back: bool,
}

impl Decision {
    pub fn direct(verdict: Verdict) -> Self {
        Self {
            verdict,
            fell_back: false,
        }
    }
}

/// Entry and exit verdicts from a frozen month context. Implementations must
/// be deterministic in the context so that decisions can be fanned out across
/// threads without changing results.
pub trait DecisionPolicy: Send + Sync {
    fn decide_entry(&self, ctx: &DecisionContext) -> Result<Decision>;
    fn decide_exit(&self, ctx: &DecisionContext) -> Result<Decision>;
    fn name(&self) -> &'static str;
}

impl<P: DecisionPolicy + ?Sized> DecisionPolicy for Box<P> {
    fn decide_entry(&self, ctx: &DecisionContext) -> Result<Decision> {
        (**self).decide_entry(ctx)
    }
    fn decide_exit(&self, ctx: &DecisionContext) -> Result<Decision> {
        (**self).decide_exit(ctx)
    }
    fn name(&self) -> &'static str {
        (**self).name()
    }
}
