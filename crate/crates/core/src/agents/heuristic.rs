use super::{Decision, DecisionContext, DecisionPolicy};
use crate::error::Result;
use crate::llm_gateway::Verdict;

/// Enter when global revenue strictly exceeds the node's cost.
pub fn heuristic_entry(ctx: &DecisionContext) -> Verdict {
    Verdict::from_bool(ctx.global_revenue > ctx.node_cost)
}

/// Signal exit when global revenue falls strictly below `tolerance * cost`.
pub fn heuristic_exit(ctx: &DecisionContext) -> Verdict {
    Verdict::from_bool(ctx.global_revenue < ctx.tolerance * ctx.node_cost)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HeuristicPolicy;

impl DecisionPolicy for HeuristicPolicy {
    fn decide_entry(&self, ctx: &DecisionContext) -> Result<Decision> {
        Ok(Decision::direct(heuristic_entry(ctx)))
    }

    fn decide_exit(&self, ctx: &DecisionContext) -> Result<Decision> {
        Ok(Decision::direct(heuristic_exit(ctx)))
    }

    fn name(&self) -> &'static str {
        "heuristic"
    }
}
