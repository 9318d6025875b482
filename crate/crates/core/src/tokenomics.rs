//! Token supply split and the release schedules of each stakeholder class.
//!
//! Months are 1-based: month 1 is the first month after launch and month 0 is
//! the pre-launch state in which nothing has been released.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the fraction sum, relative to 1.
const FRACTION_EPS: f64 = 1e-12;

/// How an allocated amount is released over time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VestingSchedule {
    /// Nothing for `cliff_months`, `unlock_at_cliff` of the allocation in the
    /// month right after the cliff, then the remainder in equal tranches over
    /// `linear_months`.
    CliffLinear {
        cliff_months: u32,
        unlock_at_cliff: f64,
        linear_months: u32,
    },
    /// Half the allocation is spread evenly over the first period, a quarter
    /// over the second, and so on.
    HalvingEmission { halving_period_months: u32 },
}

impl VestingSchedule {
    pub const fn team_default() -> Self {
        VestingSchedule::CliffLinear {
            cliff_months: 11,
            unlock_at_cliff: 0.25,
            linear_months: 36,
        }
    }

    pub const fn vc_default() -> Self {
        VestingSchedule::CliffLinear {
            cliff_months: 11,
            unlock_at_cliff: 0.5,
            linear_months: 12,
        }
    }

    pub const fn node_default() -> Self {
        VestingSchedule::HalvingEmission {
            halving_period_months: 48,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            VestingSchedule::CliffLinear {
                unlock_at_cliff,
                linear_months,
                ..
            } => {
                if !(0.0..=1.0).contains(&unlock_at_cliff) {
                    return Err(Error::invalid(format!(
                        "unlock_at_cliff must be in [0, 1], got {unlock_at_cliff}"
                    )));
                }
                if linear_months == 0 {
                    return Err(Error::invalid("linear_months must be > 0"));
                }
            }
            VestingSchedule::HalvingEmission {
                halving_period_months,
            } => {
                if halving_period_months == 0 {
                    return Err(Error::invalid("halving_period_months must be > 0"));
                }
            }
        }
        Ok(())
    }

    /// Amount released in `month` (1-based) out of `allocated`.
    pub fn release(&self, month: u32, allocated: f64) -> Result<f64> {
        check_month(month)?;
        Ok(match *self {
            VestingSchedule::CliffLinear {
                cliff_months,
                unlock_at_cliff,
                linear_months,
            } => {
                let unlock_month = cliff_months + 1;
                if month < unlock_month {
                    0.0
                } else if month == unlock_month {
                    unlock_at_cliff * allocated
                } else if month - unlock_month <= linear_months {
                    (1.0 - unlock_at_cliff) * allocated / f64::from(linear_months)
                } else {
                    0.0
                }
            }
            VestingSchedule::HalvingEmission {
                halving_period_months,
            } => {
                let period = (month - 1) / halving_period_months;
                allocated * halving_weight(period + 1) / f64::from(halving_period_months)
            }
        })
    }

    /// Total released over months `1..=month`; zero at month 0.
    pub fn cumulative(&self, month: u32, allocated: f64) -> f64 {
        match *self {
            VestingSchedule::CliffLinear {
                cliff_months,
                unlock_at_cliff,
                linear_months,
            } => {
                if month <= cliff_months {
                    return 0.0;
                }
                let tranches = (month - cliff_months - 1).min(linear_months);
                let linear_share = f64::from(tranches) / f64::from(linear_months);
                unlock_at_cliff * allocated + (1.0 - unlock_at_cliff) * allocated * linear_share
            }
            VestingSchedule::HalvingEmission {
                halving_period_months,
            } => {
                let full = month / halving_period_months;
                let rest = month % halving_period_months;
                let done = allocated * (1.0 - halving_weight(full));
                let partial = allocated * halving_weight(full + 1) * f64::from(rest)
                    / f64::from(halving_period_months);
                done + partial
            }
        }
    }
}

/// 2^-exponent, saturating to zero for very late periods.
fn halving_weight(exponent: u32) -> f64 {
    if exponent > 1100 {
        0.0
    } else {
        0.5f64.powi(exponent as i32)
    }
}

fn check_month(month: u32) -> Result<()> {
    if month == 0 {
        Err(Error::invalid("release months are 1-based; month 0 has no release"))
    } else {
        Ok(())
    }
}

/// The fixed supply and how it is split between core team, VCs and node
/// providers, together with each class's release schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TokenAllocation {
    pub total_supply: f64,
    pub team_fraction: f64,
    pub vc_fraction: f64,
    pub node_fraction: f64,
    pub team_vesting: VestingSchedule,
    pub vc_vesting: VestingSchedule,
    pub node_vesting: VestingSchedule,
}

impl Default for TokenAllocation {
    fn default() -> Self {
        Self {
            total_supply: 1_000_000_000.0,
            team_fraction: 0.20,
            vc_fraction: 0.20,
            node_fraction: 0.60,
            team_vesting: VestingSchedule::team_default(),
            vc_vesting: VestingSchedule::vc_default(),
            node_vesting: VestingSchedule::node_default(),
        }
    }
}

impl TokenAllocation {
    pub fn validate(&self) -> Result<()> {
        if !(self.total_supply.is_finite() && self.total_supply > 0.0) {
            return Err(Error::invalid(format!(
                "total_supply must be positive and finite, got {}",
                self.total_supply
            )));
        }
        let fractions = [self.team_fraction, self.vc_fraction, self.node_fraction];
        if fractions.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return Err(Error::invalid("allocation fractions must each lie in [0, 1]"));
        }
        let sum: f64 = fractions.iter().sum();
        if (sum - 1.0).abs() > FRACTION_EPS {
            return Err(Error::invalid(format!(
                "allocation fractions must sum to 1, got {sum}"
            )));
        }
        self.team_vesting.validate()?;
        self.vc_vesting.validate()?;
        self.node_vesting.validate()
    }

    pub fn team_tokens(&self) -> f64 {
        self.team_fraction * self.total_supply
    }

    pub fn vc_tokens(&self) -> f64 {
        self.vc_fraction * self.total_supply
    }

    pub fn node_tokens(&self) -> f64 {
        self.node_fraction * self.total_supply
    }
}

pub fn team_release(month: u32, alloc: &TokenAllocation) -> Result<f64> {
    alloc.team_vesting.release(month, alloc.team_tokens())
}

pub fn vc_release(month: u32, alloc: &TokenAllocation) -> Result<f64> {
    alloc.vc_vesting.release(month, alloc.vc_tokens())
}

/// Tokens emitted to node providers in `month`.
pub fn node_emission(month: u32, alloc: &TokenAllocation) -> Result<f64> {
    alloc.node_vesting.release(month, alloc.node_tokens())
}

/// Everything released by all three schedules over months `1..=month`.
pub fn circulating_supply(month: u32, alloc: &TokenAllocation) -> f64 {
    let supply = alloc.team_vesting.cumulative(month, alloc.team_tokens())
        + alloc.vc_vesting.cumulative(month, alloc.vc_tokens())
        + alloc.node_vesting.cumulative(month, alloc.node_tokens());
    supply.min(alloc.total_supply)
}

/// One row of the per-month release table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReleaseRow {
    pub month: u32,
    pub team: f64,
    pub vc: f64,
    pub node: f64,
    pub team_cumulative: f64,
    pub vc_cumulative: f64,
    pub node_cumulative: f64,
    pub circulating: f64,
}

/// Per-month releases for months `1..=horizon`.
pub fn release_table(alloc: &TokenAllocation, horizon: u32) -> Result<Vec<ReleaseRow>> {
    alloc.validate()?;
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1 month"));
    }
    (1..=horizon)
        .map(|month| {
            Ok(ReleaseRow {
                month,
                team: team_release(month, alloc)?,
                vc: vc_release(month, alloc)?,
                node: node_emission(month, alloc)?,
                team_cumulative: alloc.team_vesting.cumulative(month, alloc.team_tokens()),
                vc_cumulative: alloc.vc_vesting.cumulative(month, alloc.vc_tokens()),
                node_cumulative: alloc.node_vesting.cumulative(month, alloc.node_tokens()),
                circulating: circulating_supply(month, alloc),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn alloc() -> TokenAllocation {
        TokenAllocation::default()
    }

    /// Month-by-month accumulation, kept independent of `cumulative`.
    fn naive_supply(month: u32, a: &TokenAllocation) -> f64 {
        (1..=month)
            .map(|m| {
                team_release(m, a).unwrap() + vc_release(m, a).unwrap() + node_emission(m, a).unwrap()
            })
            .sum()
    }

    #[test]
    fn team_schedule_points() {
        let a = alloc();
        assert_eq!(team_release(11, &a).unwrap(), 0.0);
        assert_eq!(team_release(12, &a).unwrap(), 50_000_000.0);
        assert_relative_eq!(team_release(30, &a).unwrap(), 4_166_666.666_666_667, max_relative = 1e-12);
        assert_eq!(team_release(48, &a).unwrap(), team_release(13, &a).unwrap());
        assert_eq!(team_release(49, &a).unwrap(), 0.0);
    }

    #[test]
    fn vc_schedule_points() {
        let a = alloc();
        assert_eq!(vc_release(11, &a).unwrap(), 0.0);
        assert_eq!(vc_release(12, &a).unwrap(), 100_000_000.0);
        assert_relative_eq!(vc_release(18, &a).unwrap(), 8_333_333.333_333_333, max_relative = 1e-12);
        assert_eq!(vc_release(25, &a).unwrap(), 0.0);
    }

    #[test]
    fn node_schedule_points() {
        let a = alloc();
        assert_eq!(node_emission(1, &a).unwrap(), 6_250_000.0);
        assert_eq!(node_emission(48, &a).unwrap(), 6_250_000.0);
        assert_eq!(node_emission(49, &a).unwrap(), 3_125_000.0);
        assert_eq!(node_emission(96, &a).unwrap(), 3_125_000.0);
        assert_eq!(node_emission(97, &a).unwrap(), 1_562_500.0);
    }

    #[test]
    fn month_zero_is_rejected() {
        let a = alloc();
        assert!(matches!(team_release(0, &a), Err(Error::InvalidArgument(_))));
        assert!(matches!(vc_release(0, &a), Err(Error::InvalidArgument(_))));
        assert!(matches!(node_emission(0, &a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn circulating_supply_points() {
        let a = alloc();
        assert_eq!(circulating_supply(0, &a), 0.0);
        // 100M team (cliff + 12 tranches) + 200M vc + 24 * 6.25M node
        assert_relative_eq!(naive_supply(24, &a), 450_000_000.0, max_relative = 1e-12);
        assert_relative_eq!(circulating_supply(24, &a), 450_000_000.0, max_relative = 1e-12);
        let late = circulating_supply(48 * 60, &a);
        assert_relative_eq!(late, 1e9, max_relative = 1e-12);
        assert!(late <= a.total_supply);
    }

    #[test]
    fn closed_form_matches_accumulation() {
        let a = alloc();
        let mut running = 0.0;
        for m in 0..=480u32 {
            if m > 0 {
                running += team_release(m, &a).unwrap()
                    + vc_release(m, &a).unwrap()
                    + node_emission(m, &a).unwrap();
            }
            let closed = circulating_supply(m, &a);
            assert!((closed - running).abs() <= 1e-6 * a.total_supply, "month {m}");
        }
    }

    #[test]
    fn halving_law_holds() {
        let a = alloc();
        for m in 1..=480 {
            assert_eq!(
                node_emission(m + 48, &a).unwrap(),
                node_emission(m, &a).unwrap() / 2.0,
                "month {m}"
            );
        }
    }

    #[test]
    fn class_totals_complete_at_schedule_end() {
        let a = alloc();
        assert_eq!(a.team_vesting.cumulative(48, a.team_tokens()), 200_000_000.0);
        assert_eq!(a.team_vesting.cumulative(200, a.team_tokens()), 200_000_000.0);
        assert_eq!(a.vc_vesting.cumulative(24, a.vc_tokens()), 200_000_000.0);
        assert_eq!(a.node_vesting.cumulative(96, a.node_tokens()), 450_000_000.0);
    }

    #[test]
    fn validation_rejects_bad_allocations() {
        let mut a = alloc();
        a.node_fraction = 0.5;
        assert!(a.validate().is_err());

        let mut a = alloc();
        a.total_supply = 0.0;
        assert!(a.validate().is_err());

        let mut a = alloc();
        a.team_vesting = VestingSchedule::CliffLinear {
            cliff_months: 11,
            unlock_at_cliff: 1.5,
            linear_months: 36,
        };
        assert!(a.validate().is_err());

        let mut a = alloc();
        a.node_vesting = VestingSchedule::HalvingEmission {
            halving_period_months: 0,
        };
        assert!(a.validate().is_err());
    }

    #[test]
    fn release_table_shape() {
        let rows = release_table(&alloc(), 96).unwrap();
        assert_eq!(rows.len(), 96);
        let team: f64 = rows.iter().map(|r| r.team).sum();
        assert!((team - 2e8).abs() <= 1e-3);
        assert_eq!(rows[48].node, rows[47].node / 2.0);
        assert_eq!(release_table(&alloc(), 1).unwrap().len(), 1);
        assert!(release_table(&alloc(), 0).is_err());
    }

    #[test]
    fn schedule_round_trips_through_json() {
        let a = alloc();
        let text = serde_json::to_string(&a).unwrap();
        let back: TokenAllocation = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
    }
}
