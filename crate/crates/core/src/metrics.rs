//! Macro indicators: efficiency (market capitalization), inclusion (share of
//! nodes run by outside operators) and stability (volatility of log returns).

use serde::{Deserialize, Serialize};

use crate::engine::Trajectory;
use crate::error::{Error, Result};

/// Inclusive month range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonthWindow {
    pub first: u32,
    pub last: u32,
}

/// Indicators for one run or one external series. Fields that cannot be
/// computed from the available data are `None` and serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub efficiency: Option<f64>,
    pub inclusion: Option<f64>,
    pub stability: Option<f64>,
    pub n_init: Option<u64>,
    pub n_total: Option<u64>,
    pub n_ext: Option<u64>,
    pub window: Option<MonthWindow>,
}

/// Market capitalization `circulating * price`.
pub fn efficiency(circulating: f64, price: f64) -> f64 {
    circulating * price
}

/// `(n_total - n_init) / n_total`.
pub fn inclusion(n_total: u64, n_init: u64) -> Result<f64> {
    if n_total == 0 {
        return Err(Error::UndefinedMetric("inclusion needs at least one node".into()));
    }
    if n_init > n_total {
        return Err(Error::invalid(format!(
            "initial nodes ({n_init}) exceed total nodes ({n_total})"
        )));
    }
    Ok((n_total - n_init) as f64 / n_total as f64)
}

/// Sample standard deviation (N - 1 denominator) of the log returns of
/// `prices`, accumulated in one pass with Welford's update.
pub fn stability(prices: &[f64]) -> Result<f64> {
    if let Some((i, p)) = prices
        .iter()
        .enumerate()
        .find(|(_, p)| !(p.is_finite() && **p > 0.0))
    {
        return Err(Error::invalid(format!(
            "prices must be positive and finite; entry {i} is {p}"
        )));
    }
    if prices.len() < 3 {
        return Err(Error::UndefinedMetric(format!(
            "stability needs at least 3 prices, got {}",
            prices.len()
        )));
    }
    let mut count = 0.0;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for pair in prices.windows(2) {
        let r = (pair[1] / pair[0]).ln();
        count += 1.0;
        let delta = r - mean;
        mean += delta / count;
        m2 += delta * (r - mean);
    }
    Ok((m2 / (count - 1.0)).sqrt())
}

/// Metrics for a finished run: efficiency from the final month, inclusion
/// over every node that ever joined, stability over the price series
/// (restricted to `window` when given).
pub fn report(trajectory: &Trajectory, window: Option<MonthWindow>) -> Result<MetricReport> {
    let last = trajectory
        .states
        .last()
        .ok_or_else(|| Error::UndefinedMetric("empty trajectory".into()))?;
    let n_init = trajectory.initial_nodes;
    let n_ext = trajectory.cumulative_entries();
    let n_total = n_init + n_ext;

    let window = window.unwrap_or(MonthWindow {
        first: trajectory.states[0].month,
        last: last.month,
    });
    if window.first > window.last {
        return Err(Error::invalid("stability window is empty"));
    }
    let prices: Vec<f64> = trajectory
        .states
        .iter()
        .filter(|s| (window.first..=window.last).contains(&s.month))
        .map(|s| s.token_price)
        .collect();

    Ok(MetricReport {
        efficiency: Some(efficiency(last.circulating_supply, last.token_price)),
        inclusion: optional(inclusion(n_total, n_init))?,
        stability: optional(stability(&prices))?,
        n_init: Some(n_init),
        n_total: Some(n_total),
        n_ext: Some(n_ext),
        window: Some(window),
    })
}

/// Undefined metrics become `None`; real errors propagate.
pub(crate) fn optional(value: Result<f64>) -> Result<Option<f64>> {
    match value {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedMetric(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Mean first, then squared deviations.
    fn two_pass(prices: &[f64]) -> f64 {
        let r: Vec<f64> = prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        let ss: f64 = r.iter().map(|x| (x - mean).powi(2)).sum();
        (ss / (r.len() as f64 - 1.0)).sqrt()
    }

    #[test]
    fn stability_examples() {
        assert_eq!(stability(&[5.0, 5.0, 5.0, 5.0]).unwrap(), 0.0);
        assert_eq!(stability(&[1.0, 2.0, 4.0, 8.0]).unwrap(), 0.0);
        let expected = 2.0 * 2f64.ln() / 3f64.sqrt();
        assert_relative_eq!(two_pass(&[1.0, 2.0, 1.0, 2.0]), expected, max_relative = 1e-12);
        assert_relative_eq!(stability(&[1.0, 2.0, 1.0, 2.0]).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(expected, 0.800_377_5, max_relative = 1e-6);
    }

    #[test]
    fn stability_errors() {
        assert!(matches!(stability(&[1.0, 2.0]), Err(Error::UndefinedMetric(_))));
        assert!(matches!(stability(&[]), Err(Error::UndefinedMetric(_))));
        assert!(matches!(stability(&[1.0, 0.0, 2.0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(stability(&[1.0, -3.0, 2.0]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn stability_matches_two_pass() {
        let prices: Vec<f64> = (0..500)
            .map(|i| 10.0 + 3.0 * (i as f64 * 0.37).sin() + (i as f64 * 0.011).cos())
            .collect();
        assert_relative_eq!(stability(&prices).unwrap(), two_pass(&prices), max_relative = 1e-12);
    }

    #[test]
    fn inclusion_examples() {
        assert_eq!(inclusion(50, 50).unwrap(), 0.0);
        assert_eq!(inclusion(100, 50).unwrap(), 0.5);
        assert_eq!(inclusion(50_000, 50).unwrap(), 0.999);
        assert!(matches!(inclusion(0, 0), Err(Error::UndefinedMetric(_))));
        assert!(inclusion(10, 11).is_err());
    }

    #[test]
    fn efficiency_examples() {
        let rndr_supply = 3_980_572_572.0 / 10.24;
        assert_relative_eq!(efficiency(rndr_supply, 10.24), 3_980_572_572.0, max_relative = 1e-4);
        assert_eq!(efficiency(1e9, 0.0), 0.0);
        assert_eq!(efficiency(1e9, 1.0), 1e9);
    }
}
