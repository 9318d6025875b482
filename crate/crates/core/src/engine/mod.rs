//! The monthly simulation loop.
//!
//! Each month runs these sub-steps against the committed state of the
//! previous month:
//!
//! 1. release tokens and update circulating supply;
//! 2. derive users from the current node count, then global revenue;
//! 3. entry decisions over a pool of candidates, then exit decisions (with
//!    patience) for the nodes that were already active;
//! 4. growth-capital arrivals and expiries; expired holdings go on sale;
//! 5. price as total endowment over tokens on sale;
//! 6. market caps, then the month is committed.
//!
//! A failing sub-step aborts the run and nothing of that month is kept.

mod config;
mod rng;
mod trajectory;

use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::agents::{
    draw_node, run_node_round, spawn_growth_capitalists, total_endowment, DecisionPolicy,
    GrowthCapitalist, HeuristicPolicy, LlmPolicy, LlmSettings, NodeProvider,
};
use crate::error::{Error, Result, SubStep};
use crate::llm_gateway::{
    AuditedBackend, CompletionBackend, HttpBackend, HttpSettings, ScriptedBackend, ENV_ENDPOINT,
    ENV_KEY,
};
use crate::market::{self, MarketState};
use crate::metrics;
use crate::tokenomics;

pub use config::{LlmConfig, PolicyKind, SimulationConfig};
pub use rng::{rng_for, Stream};
pub use trajectory::{MonthEvents, Trajectory, CSV_COLUMNS};

/// Tokens a growth capitalist bought on arrival, returned to the market when
/// its lifespan ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcHolding {
    pub capitalist: GrowthCapitalist,
    pub tokens: f64,
}

/// Everything needed to advance one month.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    pub market: MarketState,
    /// Active nodes in ascending id order.
    pub nodes: Vec<NodeProvider>,
    pub holdings: Vec<GcHolding>,
    pub next_node_id: u64,
    pub next_gc_id: u64,
}

impl SimState {
    /// Month-0 state: the founding nodes, nothing released, `initial_price`.
    pub fn initial(config: &SimulationConfig) -> Result<Self> {
        config.validate()?;
        let nodes = (0..config.initial_nodes)
            .map(|id| {
                let mut rng = rng_for(config.seed, 0, Stream::InitialNodes, id);
                draw_node(id, config.revenue.node_operating_cost, &config.nodes, 0, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            market: MarketState::genesis(
                config.initial_nodes,
                config.initial_price,
                config.allocation.total_supply,
            ),
            nodes,
            holdings: Vec::new(),
            next_node_id: config.initial_nodes,
            next_gc_id: 0,
        })
    }

    pub fn month(&self) -> u32 {
        self.market.month
    }
}

/// Advances `state` by one month.
pub fn step<P: DecisionPolicy + ?Sized>(
    state: &SimState,
    config: &SimulationConfig,
    policy: &P,
) -> Result<(SimState, MonthEvents)> {
    let month = state.month() + 1;
    let prev = &state.market;
    let alloc = &config.allocation;

    // 1. token releases
    let emission = tokenomics::node_emission(month, alloc).map_err(|e| e.at(month, SubStep::ReleaseTokens))?;
    let circulating = tokenomics::circulating_supply(month, alloc);
    let mut tokens_on_sale = prev.tokens_on_sale;
    if month == 1 {
        tokens_on_sale += config.initial_sale_fraction * circulating;
    }

    // 2. users and revenue from the node count at the start of the month
    let prev_nodes = state.nodes.len() as u64;
    let users = market::user_count(prev_nodes);
    let revenue = market::global_revenue(prev.token_price, emission, prev_nodes, users, &config.revenue);
    if !revenue.is_finite() {
        return Err(Error::InvalidState(format!("global revenue is {revenue}")).at(month, SubStep::Revenue));
    }

    // 3. node entries, then exits
    let candidates = (0..u64::from(config.nodes.entry_pool_size))
        .map(|slot| {
            let mut rng = rng_for(config.seed, month, Stream::EntryCandidates, slot);
            draw_node(
                state.next_node_id + slot,
                config.revenue.node_operating_cost,
                &config.nodes,
                month,
                &mut rng,
            )
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at(month, SubStep::NodeDecisions))?;
    let round = run_node_round(month, revenue, &state.nodes, &candidates, policy, config.parallel_agents)
        .map_err(|e| e.at(month, SubStep::NodeDecisions))?;
    let mut next_node_id = state.next_node_id;
    let mut nodes = round.stayed;
    for mut node in round.entered.iter().cloned() {
        node.id = next_node_id;
        next_node_id += 1;
        nodes.push(node);
    }
    let active_nodes = nodes.len() as u64;

    // 4. growth capital
    let mut gc_rng = rng_for(config.seed, month, Stream::GrowthCapital, 0);
    let arrivals = spawn_growth_capitalists(month, &config.growth_capital, state.next_gc_id, &mut gc_rng)
        .map_err(|e| e.at(month, SubStep::GrowthCapital))?;
    let next_gc_id = state.next_gc_id + arrivals.len() as u64;
    let gc_arrivals = arrivals.len() as u64;
    let mut holdings = Vec::with_capacity(state.holdings.len() + arrivals.len());
    let mut gc_expiries = 0;
    for holding in &state.holdings {
        if holding.capitalist.is_active(month) {
            holdings.push(holding.clone());
        } else {
            tokens_on_sale += holding.tokens;
            gc_expiries += 1;
        }
    }
    // arrivals buy at the price they observe on entry
    holdings.extend(arrivals.into_iter().map(|capitalist| GcHolding {
        tokens: capitalist.endowment / prev.token_price,
        capitalist,
    }));
    let total_gc_endowment = total_endowment(holdings.iter().map(|h| &h.capitalist), month);

    // 5. price; with no buyers or no sellers there is no trade and the last price stands
    let token_price = match market::token_price(total_gc_endowment, tokens_on_sale) {
        Some(p) if total_gc_endowment > 0.0 => p,
        _ => prev.token_price,
    };
    if !(token_price.is_finite() && token_price > 0.0) {
        return Err(Error::InvalidState(format!("token price is {token_price}")).at(month, SubStep::Price));
    }

    // 6. caps and record
    let market = MarketState {
        month,
        active_nodes,
        users,
        token_price,
        tokens_on_sale,
        circulating_supply: circulating,
        total_gc_endowment,
        global_revenue: revenue,
        node_profit: market::node_profit(revenue, active_nodes, config.revenue.node_operating_cost).ok(),
        market_cap: market::market_cap(token_price, circulating),
        diluted_market_cap: market::diluted_market_cap(token_price, alloc.total_supply),
    };
    if !market.is_finite() {
        return Err(Error::InvalidState("non-finite market state".into()).at(month, SubStep::Record));
    }
    let events = MonthEvents {
        month,
        entries: round.entered.len() as u64,
        exits: round.exited.len() as u64,
        gc_arrivals,
        gc_expiries,
        fallbacks: u64::from(round.fallbacks),
    };
    Ok((
        SimState {
            market,
            nodes,
            holdings,
            next_node_id,
            next_gc_id,
        },
        events,
    ))
}

/// Runs the configured horizon with an explicit policy.
pub fn run_with_policy<P: DecisionPolicy + ?Sized>(config: &SimulationConfig, policy: &P) -> Result<Trajectory> {
    let mut state = SimState::initial(config)?;
    let horizon = config.horizon_months as usize;
    let mut states = Vec::with_capacity(horizon);
    let mut events = Vec::with_capacity(horizon);
    for _ in 0..config.horizon_months {
        let (next, ev) = step(&state, config, policy)?;
        states.push(next.market.clone());
        events.push(ev);
        state = next;
    }
    let mut trajectory = Trajectory {
        seed: config.seed,
        policy: policy.name().to_owned(),
        config: config.clone(),
        initial_nodes: config.initial_nodes,
        states,
        events,
        metrics: None,
    };
    trajectory.metrics = Some(metrics::report(&trajectory, config.stability_window)?);
    Ok(trajectory)
}

/// Runs the configured horizon with the policy named in the config.
pub fn run(config: &SimulationConfig) -> Result<Trajectory> {
    config.validate()?;
    let policy = build_policy(config, None)?;
    run_with_policy(config, &*policy)
}

/// Builds the configured policy. For the language-model policy a script file
/// wins over an HTTP endpoint; having neither is a config error. With
/// `audit_log` every exchange is appended to that file.
pub fn build_policy(config: &SimulationConfig, audit_log: Option<&Path>) -> Result<Box<dyn DecisionPolicy>> {
    match config.policy {
        PolicyKind::Heuristic => Ok(Box::new(HeuristicPolicy)),
        PolicyKind::Llm => {
            let backend = build_backend(&config.llm)?;
            let backend: Box<dyn CompletionBackend> = match audit_log {
                Some(path) => Box::new(AuditedBackend::new(backend, path)?),
                None => backend,
            };
            let settings = LlmSettings {
                model_name: config.llm.model.clone(),
                max_tokens: config.llm.max_tokens,
                temperature: config.llm.temperature,
            };
            Ok(Box::new(LlmPolicy::new(backend, settings)))
        }
    }
}

pub fn build_backend(llm: &LlmConfig) -> Result<Box<dyn CompletionBackend>> {
    if let Some(script) = &llm.script {
        return Ok(Box::new(ScriptedBackend::load(script)?));
    }
    let endpoint = llm
        .endpoint
        .clone()
        .or_else(|| std::env::var(ENV_ENDPOINT).ok())
        .filter(|e| !e.is_empty())
        .ok_or_else(|| {
            Error::config(format!(
                "policy llm needs llm.script, llm.endpoint or {ENV_ENDPOINT}"
            ))
        })?;
    let api_key = llm.api_key.clone().or_else(|| std::env::var(ENV_KEY).ok());
    let settings = HttpSettings {
        endpoint,
        api_key,
        timeout: Duration::from_millis(llm.timeout_ms),
        retries: llm.retries,
        backoff: Duration::from_millis(llm.backoff_ms),
    };
    Ok(Box::new(HttpBackend::new(settings)?))
}
