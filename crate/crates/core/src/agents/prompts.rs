use super::DecisionContext;
use crate::error::{Error, Result};

fn finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(format!("{name} must be finite to render a prompt, got {value}")))
    }
}

// Numbers use the shortest decimal form that parses back to the same f64.

pub fn render_entry_prompt(ctx: &DecisionContext) -> Result<String> {
    let revenue = finite("global revenue", ctx.global_revenue)?;
    let cost = finite("node cost", ctx.node_cost)?;
    Ok(format!(
        "The global estimated revenue is {revenue}. A node has a cost of {cost}. \
         Should the node enter the system? Please answer 'yes' or 'no'."
    ))
}

pub fn render_exit_prompt(ctx: &DecisionContext) -> Result<String> {
    let revenue = finite("global revenue", ctx.global_revenue)?;
    let cost = finite("node cost", ctx.node_cost)?;
    let tolerance = finite("tolerance", ctx.tolerance)?;
    Ok(format!(
        "The global estimated revenue is {revenue}. A node has a cost of {cost} and a tolerance of {tolerance}. \
         Should the node exit the system? Please answer 'yes' or 'no'."
    ))
}
