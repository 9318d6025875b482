//! Market formulas: user growth, network revenue, node profit, price and
//! capitalization. Everything here is a pure function of its arguments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Users supported by the network per node pair, scaled by this constant.
pub const USERS_PER_PAIR_SCALE: f64 = 100.0;

/// Snapshot of the market at the end of a month.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketState {
    pub month: u32,
    pub active_nodes: u64,
    /// Users derived from the node count at the start of the month; this is
    /// the figure the month's revenue was computed from.
    pub users: f64,
    pub token_price: f64,
    pub tokens_on_sale: f64,
    pub circulating_supply: f64,
    pub total_gc_endowment: f64,
    pub global_revenue: f64,
    /// Per-node profit at the baseline node cost; absent when no node is active.
    pub node_profit: Option<f64>,
    pub market_cap: f64,
    pub diluted_market_cap: f64,
}

impl MarketState {
    /// Pre-launch state: nothing released, nothing for sale.
    pub fn genesis(active_nodes: u64, initial_price: f64, total_supply: f64) -> Self {
        Self {
            month: 0,
            active_nodes,
            users: user_count(active_nodes),
            token_price: initial_price,
            tokens_on_sale: 0.0,
            circulating_supply: 0.0,
            total_gc_endowment: 0.0,
            global_revenue: 0.0,
            node_profit: None,
            market_cap: 0.0,
            diluted_market_cap: diluted_market_cap(initial_price, total_supply),
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            self.users,
            self.token_price,
            self.tokens_on_sale,
            self.circulating_supply,
            self.total_gc_endowment,
            self.global_revenue,
            self.node_profit.unwrap_or(0.0),
            self.market_cap,
            self.diluted_market_cap,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Revenue-side parameters: `user_revenue_factor` is currency earned per
/// user per month, `node_operating_cost` the baseline monthly node cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RevenueParams {
    pub user_revenue_factor: f64,
    pub node_operating_cost: f64,
}

impl Default for RevenueParams {
    fn default() -> Self {
        Self {
            user_revenue_factor: 10.0,
            node_operating_cost: 1_000.0,
        }
    }
}

impl RevenueParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.user_revenue_factor.is_finite() && self.user_revenue_factor >= 0.0) {
            return Err(Error::invalid("user_revenue_factor must be finite and >= 0"));
        }
        if !(self.node_operating_cost.is_finite() && self.node_operating_cost > 0.0) {
            return Err(Error::invalid("node_operating_cost must be finite and > 0"));
        }
        Ok(())
    }
}

/// `100 * sqrt(n (n - 1) / 2)`: users grow with the number of node pairs.
pub fn user_count(nodes: u64) -> f64 {
    if nodes < 2 {
        return 0.0;
    }
    let n = nodes as f64;
    USERS_PER_PAIR_SCALE * (n * (n - 1.0) / 2.0).sqrt()
}

/// Signed variant for callers holding counts as integers that may be negative.
pub fn user_count_checked(nodes: i64) -> Result<f64> {
    u64::try_from(nodes)
        .map(user_count)
        .map_err(|_| Error::invalid(format!("node count must be >= 0, got {nodes}")))
}

/// Token-denominated part of revenue: last month's price times this month's
/// node emission, shared over last month's nodes. Zero when there were no nodes.
pub fn token_revenue(prev_price: f64, node_emission: f64, prev_nodes: u64) -> f64 {
    if prev_nodes == 0 {
        0.0
    } else {
        prev_price * node_emission / prev_nodes as f64
    }
}

pub fn user_revenue(users: f64, params: &RevenueParams) -> f64 {
    params.user_revenue_factor * users
}

/// Global estimated revenue: token term plus `k * users`.
pub fn global_revenue(
    prev_price: f64,
    node_emission: f64,
    prev_nodes: u64,
    users: f64,
    params: &RevenueParams,
) -> f64 {
    token_revenue(prev_price, node_emission, prev_nodes) + user_revenue(users, params)
}

/// Per-node profit `R / n - cost`.
pub fn node_profit(global_revenue: f64, nodes: u64, cost: f64) -> Result<f64> {
    if nodes == 0 {
        return Err(Error::invalid("node profit is undefined with zero nodes"));
    }
    Ok(global_revenue / nodes as f64 - cost)
}

/// Price as total growth-capital endowment over tokens on sale; `None` when
/// nothing is on sale.
pub fn token_price(total_endowment: f64, tokens_on_sale: f64) -> Option<f64> {
    (tokens_on_sale > 0.0).then(|| total_endowment / tokens_on_sale)
}

pub fn market_cap(price: f64, circulating_supply: f64) -> f64 {
    price * circulating_supply
}

pub fn diluted_market_cap(price: f64, total_supply: f64) -> f64 {
    price * total_supply
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn user_count_examples() {
        assert_eq!(user_count(0), 0.0);
        assert_eq!(user_count(1), 0.0);
        assert_eq!(user_count(2), 100.0);
        assert_eq!(user_count(50), 3_500.0);
        assert!(user_count_checked(-1).is_err());
        assert_eq!(user_count_checked(50).unwrap(), 3_500.0);
    }

    #[test]
    fn user_count_square_identity() {
        for n in 0..2_000u64 {
            let u = user_count(n);
            let expected = 1e4 * (n * n.saturating_sub(1)) as f64 / 2.0;
            assert_relative_eq!(u * u, expected, max_relative = 1e-12);
            assert!(user_count(n + 1) >= u);
        }
    }

    #[test]
    fn revenue_examples() {
        let no_users = RevenueParams {
            user_revenue_factor: 0.0,
            ..RevenueParams::default()
        };
        let p = RevenueParams::default();
        assert_eq!(global_revenue(0.0, 6_250_000.0, 50, 0.0, &p), 0.0);
        assert_eq!(global_revenue(1.0, 6_250_000.0, 50, 0.0, &no_users), 125_000.0);
        assert_eq!(global_revenue(1.0, 6_250_000.0, 50, 3_500.0, &p), 160_000.0);
    }

    #[test]
    fn revenue_with_no_previous_nodes_keeps_user_term() {
        let p = RevenueParams::default();
        assert_eq!(global_revenue(3.0, 6_250_000.0, 0, 100.0, &p), 1_000.0);
    }

    #[test]
    fn revenue_decomposes_additively() {
        let p = RevenueParams::default();
        let full = global_revenue(2.5, 1e6, 40, 700.0, &p);
        let token_only = global_revenue(2.5, 1e6, 40, 0.0, &p);
        let user_only = global_revenue(0.0, 1e6, 40, 700.0, &p);
        assert_eq!(full, token_only + user_only);
        assert_eq!(token_only, token_revenue(2.5, 1e6, 40));
        assert_eq!(user_only, user_revenue(700.0, &p));
    }

    #[test]
    fn profit_examples() {
        assert_eq!(node_profit(160_000.0, 50, 1_000.0).unwrap(), 2_200.0);
        assert_eq!(node_profit(0.0, 1, 1_000.0).unwrap(), -1_000.0);
        assert_eq!(node_profit(37.0 * 1_250.0, 37, 1_250.0).unwrap(), 0.0);
        assert!(node_profit(1.0, 0, 1.0).is_err());
    }

    #[test]
    fn price_examples() {
        assert_eq!(token_price(1e6, 1e6), Some(1.0));
        assert_eq!(token_price(2e6, 1e6), Some(2.0));
        assert_eq!(token_price(0.0, 5.0), Some(0.0));
        assert_eq!(token_price(1e6, 0.0), None);
    }

    #[test]
    fn cap_examples() {
        // ICP: price 12.13 with back-derived circulating supply
        let cap = market_cap(12.13, 464_300_191.0);
        assert!((cap - 5_631_971_226.0).abs() / 5_631_971_226.0 < 1e-4);
        assert_eq!(market_cap(0.0, 1e9), 0.0);
        assert_eq!(diluted_market_cap(1.0, 1e9), 1e9);
        assert!(diluted_market_cap(3.0, 1e9) >= market_cap(3.0, 4e8));
    }
}
