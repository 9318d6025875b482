use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::llm_gateway::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeProvider {
    pub id: u64,
    /// Monthly operating cost.
    pub cost: f64,
    /// Risk tolerance in (0, 1]; exit is signalled below `tolerance * cost`.
    pub tolerance: f64,
    /// Consecutive exit signals needed before the node actually leaves.
    pub patience: u32,
    pub consecutive_exit_signals: u32,
    pub active: bool,
    pub joined_month: u32,
}

impl NodeProvider {
    pub fn new(id: u64, cost: f64, tolerance: f64, patience: u32, joined_month: u32) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance <= 1.0) {
            return Err(Error::invalid(format!("tolerance must lie in (0, 1], got {tolerance}")));
        }
        if patience == 0 {
            return Err(Error::invalid("patience must be >= 1"));
        }
        if !(cost.is_finite() && cost > 0.0) {
            return Err(Error::invalid(format!("node cost must be positive, got {cost}")));
        }
        Ok(Self {
            id,
            cost,
            tolerance,
            patience,
            consecutive_exit_signals: 0,
            active: true,
            joined_month,
        })
    }

    /// Feeds one exit signal through the patience counter; returns whether
    /// the node leaves now.
    pub fn observe_exit_signal(&mut self, signal: Verdict) -> Result<bool> {
        if !self.active {
            return Err(Error::InvalidState(format!("node {} is not active", self.id)));
        }
        match signal {
            Verdict::No => {
                self.consecutive_exit_signals = 0;
                Ok(false)
            }
            Verdict::Yes => {
                self.consecutive_exit_signals += 1;
                let exits = self.consecutive_exit_signals >= self.patience;
                if exits {
                    self.active = false;
                }
                Ok(exits)
            }
        }
    }
}

/// Value-returning form of [`NodeProvider::observe_exit_signal`].
pub fn apply_patience(signal: Verdict, node: &NodeProvider) -> Result<(NodeProvider, bool)> {
    let mut next = node.clone();
    let exits = next.observe_exit_signal(signal)?;
    Ok((next, exits))
}

/// How node costs and tolerances are drawn and how many candidates try to
/// join each month.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NodeParams {
    /// Costs are uniform in `[1 - spread, 1 + spread] * base cost`.
    pub cost_spread: f64,
    pub tolerance_min: f64,
    pub tolerance_max: f64,
    pub patience: u32,
    pub entry_pool_size: u32,
}

impl Default for NodeParams {
    fn default() -> Self {
        Self {
            cost_spread: 0.2,
            tolerance_min: 0.3,
            tolerance_max: 0.9,
            patience: 1,
            entry_pool_size: 10,
        }
    }
}

impl NodeParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.cost_spread) {
            return Err(Error::invalid("cost_spread must lie in [0, 1)"));
        }
        if !(self.tolerance_min > 0.0
            && self.tolerance_min <= self.tolerance_max
            && self.tolerance_max <= 1.0)
        {
            return Err(Error::invalid(
                "tolerance range must satisfy 0 < tolerance_min <= tolerance_max <= 1",
            ));
        }
        if self.patience == 0 {
            return Err(Error::invalid("patience must be >= 1"));
        }
        Ok(())
    }
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

pub fn draw_node<R: Rng + ?Sized>(
    id: u64,
    base_cost: f64,
    params: &NodeParams,
    joined_month: u32,
    rng: &mut R,
) -> Result<NodeProvider> {
    let cost = base_cost * uniform(rng, 1.0 - params.cost_spread, 1.0 + params.cost_spread);
    let tolerance = uniform(rng, params.tolerance_min, params.tolerance_max);
    NodeProvider::new(id, cost, tolerance, params.patience, joined_month)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Verdict::{No, Yes};

    fn node(patience: u32) -> NodeProvider {
        NodeProvider::new(1, 1_000.0, 0.5, patience, 0).unwrap()
    }

    /// Index (1-based) of the signal at which the node leaves, if any.
    fn exit_at(patience: u32, signals: &[Verdict]) -> Option<usize> {
        let mut n = node(patience);
        for (i, s) in signals.iter().enumerate() {
            let (next, exits) = apply_patience(*s, &n).unwrap();
            n = next;
            if exits {
                return Some(i + 1);
            }
        }
        None
    }

    #[test]
    fn patience_examples() {
        assert_eq!(exit_at(1, &[Yes]), Some(1));
        assert_eq!(exit_at(3, &[Yes, Yes, No, Yes, Yes, Yes]), Some(6));
        assert_eq!(exit_at(3, &[No; 20]), None);
    }

    #[test]
    fn counter_resets_on_no() {
        let (n, _) = apply_patience(Yes, &node(3)).unwrap();
        assert_eq!(n.consecutive_exit_signals, 1);
        let (n, _) = apply_patience(No, &n).unwrap();
        assert_eq!(n.consecutive_exit_signals, 0);
    }

    #[test]
    fn exited_node_rejects_signals() {
        let (n, exits) = apply_patience(Yes, &node(1)).unwrap();
        assert!(exits && !n.active);
        assert!(matches!(apply_patience(No, &n), Err(Error::InvalidState(_))));
    }

    #[test]
    fn constructor_checks_invariants() {
        assert!(NodeProvider::new(1, 1.0, 0.0, 1, 0).is_err());
        assert!(NodeProvider::new(1, 1.0, 1.1, 1, 0).is_err());
        assert!(NodeProvider::new(1, 1.0, 1.0, 0, 0).is_err());
        assert!(NodeProvider::new(1, 0.0, 0.5, 1, 0).is_err());
    }

    #[test]
    fn draws_stay_in_range() {
        let params = NodeParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for id in 0..1_000 {
            let n = draw_node(id, 1_000.0, &params, 0, &mut rng).unwrap();
            assert!((800.0..=1_200.0).contains(&n.cost));
            assert!((0.3..=0.9).contains(&n.tolerance));
        }
        let fixed = NodeParams {
            cost_spread: 0.0,
            tolerance_min: 0.5,
            tolerance_max: 0.5,
            ..params
        };
        let n = draw_node(0, 1_000.0, &fixed, 0, &mut rng).unwrap();
        assert_eq!((n.cost, n.tolerance), (1_000.0, 0.5));
    }
}
