use rayon::prelude::*;

use super::{Decision, DecisionContext, DecisionPolicy, NodeProvider};
use crate::error::Result;

/// Outcome of one month of node decisions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeRound {
    pub entered: Vec<NodeProvider>,
    /// Nodes that were active and remain so, with updated patience counters.
    pub stayed: Vec<NodeProvider>,
    pub exited: Vec<NodeProvider>,
    pub fallbacks: u32,
}

fn decide_all<F>(nodes: &[NodeProvider], parallel: bool, decide: F) -> Result<Vec<Decision>>
where
    F: Fn(&NodeProvider) -> Result<Decision> + Sync + Send,
{
    let results: Vec<Result<Decision>> = if parallel {
        nodes.par_iter().map(&decide).collect()
    } else {
        nodes.iter().map(&decide).collect()
    };
    // first error in input order, whichever thread hit it
    results.into_iter().collect()
}

/// Runs entry decisions for `candidates` and exit decisions for `active`
/// nodes against the same month context.
///
/// Every decision reads only `revenue`, `month` and its own node, so the
/// result is the same whether decisions run sequentially or in parallel.
/// Entrants do not face an exit decision until the following month.
pub fn run_node_round<P: DecisionPolicy + ?Sized>(
    month: u32,
    revenue: f64,
    active: &[NodeProvider],
    candidates: &[NodeProvider],
    policy: &P,
    parallel: bool,
) -> Result<NodeRound> {
    let entry = decide_all(candidates, parallel, |n| {
        policy.decide_entry(&DecisionContext::for_node(n, revenue, month))
    })?;
    let exit = decide_all(active, parallel, |n| {
        policy.decide_exit(&DecisionContext::for_node(n, revenue, month))
    })?;

    let mut round = NodeRound::default();
    for (candidate, decision) in candidates.iter().zip(&entry) {
        round.fallbacks += u32::from(decision.fell_back);
        if decision.verdict.is_yes() {
            let mut node = candidate.clone();
            node.joined_month = month;
            round.entered.push(node);
        }
    }
    for (node, decision) in active.iter().zip(&exit) {
        round.fallbacks += u32::from(decision.fell_back);
        let mut node = node.clone();
        if node.observe_exit_signal(decision.verdict)? {
            round.exited.push(node);
        } else {
            round.stayed.push(node);
        }
    }
    Ok(round)
}
