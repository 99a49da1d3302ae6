//! HARQ latency budgets and maximum RU-DU fiber distance.
//!
//! Budget decomposition convention: the HARQ round trip (8 ms in LTE) pays
//! for downlink processing (1 ms) and uplink processing (2 ms); the remainder
//! is shared across the four HARQ propagation legs. One leg's one-way
//! allowance is `oneway_fraction` of that remainder (default 1/10, which
//! yields the 500 us residual behind the "up to 100 km" figure at
//! 5 us/km). The fraction is an explicit parameter because the timing chain
//! between the legs is not standardized here.

use crate::error::{Error, Result};
use crate::rat::{int, rat, to_f64, Rat};

/// HARQ-derived time budget.
#[derive(Debug, Clone)]
pub struct LatencyBudget {
    pub harq_rtt_ms: Rat,
    pub dl_processing_ms: Rat,
    pub ul_processing_ms: Rat,
    pub propagation_us_per_km: Rat,
    /// Fraction of the post-processing remainder granted to one fiber leg.
    pub oneway_fraction: Rat,
}

impl Default for LatencyBudget {
    fn default() -> Self {
        LatencyBudget {
            harq_rtt_ms: int(8),
            dl_processing_ms: int(1),
            ul_processing_ms: int(2),
            propagation_us_per_km: int(5),
            oneway_fraction: rat(1, 10),
        }
    }
}

impl LatencyBudget {
    pub fn validate(&self) -> Result<()> {
        if self.harq_rtt_ms <= int(0)
            || self.dl_processing_ms <= int(0)
            || self.ul_processing_ms <= int(0)
            || self.propagation_us_per_km <= int(0)
        {
            return Err(Error::Config("all budget terms must be positive".into()));
        }
        if self.oneway_fraction <= int(0) || self.oneway_fraction > int(1) {
            return Err(Error::Config("oneway fraction must lie in (0, 1]".into()));
        }
        if self.dl_processing_ms + self.ul_processing_ms > self.harq_rtt_ms {
            return Err(Error::Infeasible {
                deficit_us: to_f64(
                    (self.dl_processing_ms + self.ul_processing_ms - self.harq_rtt_ms) * int(1000),
                ),
            });
        }
        Ok(())
    }
}

/// One-way time available for fiber propagation, in microseconds, after
/// subtracting processing terms and `extra_fixed_us` of additional delay.
pub fn residual_oneway_budget(budget: &LatencyBudget, extra_fixed_us: Rat) -> Result<Rat> {
    budget.validate()?;
    if extra_fixed_us < int(0) {
        return Err(Error::Domain("extra fixed delay must be nonnegative".into()));
    }
    let remainder_us =
        (budget.harq_rtt_ms - budget.dl_processing_ms - budget.ul_processing_ms) * int(1000);
    let residual = remainder_us * budget.oneway_fraction - extra_fixed_us;
    if residual < int(0) {
        return Err(Error::Infeasible {
            deficit_us: to_f64(-residual),
        });
    }
    Ok(residual)
}

/// Maximum RU-DU distance in km for a one-way residual budget.
pub fn max_fronthaul_distance(residual_oneway_us: Rat, propagation_us_per_km: Rat) -> Result<Rat> {
    if propagation_us_per_km <= int(0) {
        return Err(Error::Domain("propagation delay per km must be positive".into()));
    }
    if residual_oneway_us < int(0) {
        return Err(Error::Domain("residual budget must be nonnegative".into()));
    }
    Ok(residual_oneway_us / propagation_us_per_km)
}

/// Extra distance gained when runtime compression frees a fraction of the
/// baseline processing time.
pub fn distance_gain_from_speedup(
    baseline_proc_us: Rat,
    compression_fraction: Rat,
    propagation_us_per_km: Rat,
) -> Result<Rat> {
    if compression_fraction < int(0) || compression_fraction > int(1) {
        return Err(Error::Domain("compression fraction must lie in [0, 1]".into()));
    }
    if baseline_proc_us < int(0) {
        return Err(Error::Domain("baseline processing time must be nonnegative".into()));
    }
    max_fronthaul_distance(baseline_proc_us * compression_fraction, propagation_us_per_km)
}
