use rand::Rng;
use rand_distr::{Distribution, LogNormal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest lifespan a draw is clamped to, in months.
const MAX_LIFESPAN_MONTHS: f64 = 100_000.0;

/// Parameters of `exp(N(mu, sigma^2))`; the median is `exp(mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogNormalParams {
    pub mu: f64,
    pub sigma: f64,
}

impl LogNormalParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::invalid(format!(
                "log-normal needs finite mu and sigma >= 0, got mu={} sigma={}",
                self.mu, self.sigma
            )));
        }
        Ok(())
    }

    pub fn median(&self) -> f64 {
        self.mu.exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let dist = LogNormal::new(self.mu, self.sigma)
            .map_err(|e| Error::invalid(format!("log-normal: {e}")))?;
        Ok(dist.sample(rng))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GcParams {
    /// Mean number of growth capitalists arriving per month (Poisson).
    pub arrival_rate: f64,
    pub endowment: LogNormalParams,
    /// Lifespan in months, rounded to the nearest whole month (at least 1).
    pub lifespan: LogNormalParams,
}

impl Default for GcParams {
    fn default() -> Self {
        Self {
            arrival_rate: 1.0,
            endowment: LogNormalParams { mu: 13.0, sigma: 1.0 },
            lifespan: LogNormalParams { mu: 2.5, sigma: 0.5 },
        }
    }
}

impl GcParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.arrival_rate.is_finite() && self.arrival_rate >= 0.0) {
            return Err(Error::invalid("gc arrival_rate must be finite and >= 0"));
        }
        self.endowment.validate()?;
        self.lifespan.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthCapitalist {
    pub id: u64,
    pub endowment: f64,
    pub entry_month: u32,
    pub lifespan: u32,
}

impl GrowthCapitalist {
    /// Active during `[entry_month, entry_month + lifespan)`.
    pub fn is_active(&self, month: u32) -> bool {
        month >= self.entry_month && month < self.exit_month()
    }

    /// First month in which the capitalist is no longer active.
    pub fn exit_month(&self) -> u32 {
        self.entry_month.saturating_add(self.lifespan)
    }
}

/// Poisson-many arrivals for `month`, ids counting up from `first_id`.
pub fn spawn_growth_capitalists<R: Rng + ?Sized>(
    month: u32,
    params: &GcParams,
    first_id: u64,
    rng: &mut R,
) -> Result<Vec<GrowthCapitalist>> {
    params.validate()?;
    if params.arrival_rate == 0.0 {
        return Ok(Vec::new());
    }
    let poisson = Poisson::new(params.arrival_rate)
        .map_err(|e| Error::invalid(format!("poisson arrivals: {e}")))?;
    let count = poisson.sample(rng) as u64;
    (0..count)
        .map(|i| {
            let endowment = params.endowment.sample(rng)?;
            let lifespan = params
                .lifespan
                .sample(rng)?
                .round()
                .clamp(1.0, MAX_LIFESPAN_MONTHS) as u32;
            Ok(GrowthCapitalist {
                id: first_id + i,
                endowment,
                entry_month: month,
                lifespan,
            })
        })
        .collect()
}

/// Sum of endowments over capitalists active in `month`.
pub fn total_endowment<'a>(gcs: impl IntoIterator<Item = &'a GrowthCapitalist>, month: u32) -> f64 {
    gcs.into_iter()
        .filter(|gc| gc.is_active(month))
        .map(|gc| gc.endowment)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gc(endowment: f64, entry: u32, lifespan: u32) -> GrowthCapitalist {
        GrowthCapitalist {
            id: 0,
            endowment,
            entry_month: entry,
            lifespan,
        }
    }

    #[test]
    fn zero_rate_spawns_nobody() {
        let params = GcParams {
            arrival_rate: 0.0,
            ..GcParams::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(spawn_growth_capitalists(5, &params, 0, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn seeded_spawns_repeat() {
        let params = GcParams {
            arrival_rate: 2.0,
            ..GcParams::default()
        };
        let a = spawn_growth_capitalists(3, &params, 10, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = spawn_growth_capitalists(3, &params, 10, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.endowment > 0.0 && g.lifespan >= 1 && g.entry_month == 3));
        assert!(a.iter().enumerate().all(|(i, g)| g.id == 10 + i as u64));
    }

    #[test]
    fn lifespan_sample_median() {
        let p = LogNormalParams { mu: 2.5, sigma: 0.5 };
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut draws: Vec<f64> = (0..100_000).map(|_| p.sample(&mut rng).unwrap()).collect();
        draws.sort_by(f64::total_cmp);
        let median = (draws[49_999] + draws[50_000]) / 2.0;
        let expected = 2.5f64.exp();
        assert!((median - expected).abs() / expected < 0.02, "median {median}");
    }

    #[test]
    fn endowment_window_is_half_open() {
        let gcs = [gc(5e6, 3, 4)];
        assert_eq!(total_endowment(&[], 3), 0.0);
        assert_eq!(total_endowment(&gcs, 2), 0.0);
        assert_eq!(total_endowment(&gcs, 3), 5e6);
        assert_eq!(total_endowment(&gcs, 6), 5e6);
        assert_eq!(total_endowment(&gcs, 7), 0.0);
    }

    #[test]
    fn endowment_sum_ignores_order() {
        let mut gcs = vec![gc(1.0, 0, 10), gc(2.0, 1, 10), gc(4.0, 2, 1), gc(8.0, 0, 2)];
        let forward = total_endowment(&gcs, 2);
        gcs.reverse();
        assert_eq!(forward, total_endowment(&gcs, 2));
        assert_eq!(forward, 7.0);
    }
}
