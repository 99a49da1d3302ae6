//! Load generation and Monte Carlo statistical-multiplexing analysis for
//! aggregated load-dependent 7.3 cells.
//!
//! Per-(cell, TTI) draws come from a stateless SplitMix64 hash of
//! (seed, cell, tti), so streams are independent across cells, random-access,
//! and identical regardless of evaluation order or thread partitioning.

use crate::error::{Error, Result};
use serde::Serialize;

/// Offered-load model for one cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TrafficModel {
    /// Fixed offered load every TTI.
    Constant,
    /// Peak with probability `activity`, zero otherwise.
    OnOff,
    /// Uniform on [0, peak] each TTI.
    PerTtiUniform,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrafficProfile {
    pub model: TrafficModel,
    /// Mean cell-load fraction (rho).
    pub activity: f64,
    pub peak_mbps: f64,
    pub seed: u64,
}

impl TrafficProfile {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.activity) {
            return Err(Error::Config("activity must lie in [0, 1]".into()));
        }
        if self.peak_mbps < 0.0 {
            return Err(Error::Config("peak must be nonnegative".into()));
        }
        Ok(())
    }
}

impl Default for TrafficProfile {
    fn default() -> Self {
        TrafficProfile {
            model: TrafficModel::OnOff,
            activity: 0.7,
            peak_mbps: 100.0,
            seed: 0,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) for a (seed, cell, tti) triple.
fn unit_draw(seed: u64, cell: u64, tti: u64) -> f64 {
    let mut h = splitmix64(seed);
    h = splitmix64(h ^ cell);
    h = splitmix64(h ^ tti);
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Offered load for one cell at one TTI; deterministic under the seed.
pub fn gen_load(profile: &TrafficProfile, cell_index: u64, tti_index: u64) -> f64 {
    match profile.model {
        TrafficModel::Constant => profile.activity * profile.peak_mbps,
        TrafficModel::OnOff => {
            if unit_draw(profile.seed, cell_index, tti_index) < profile.activity {
                profile.peak_mbps
            } else {
                0.0
            }
        }
        TrafficModel::PerTtiUniform => {
            unit_draw(profile.seed, cell_index, tti_index) * profile.peak_mbps
        }
    }
}

/// Statistical multiplexing report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuxReport {
    pub n_cells: u32,
    pub percentile: f64,
    pub percentile_demand_mbps: f64,
    pub sum_peaks_mbps: f64,
    pub mux_gain: f64,
    pub trials: u64,
    /// Set when `trials` is too small to resolve the requested percentile.
    pub precision_warning: Option<String>,
    /// Aggregate-demand histogram as (upper edge Mbps, count) pairs.
    pub histogram: Vec<(f64, u64)>,
}

/// Nearest-rank percentile of the aggregate demand of `n_cells` independent
/// sources over `trials` TTIs.
pub fn mux_gain(
    n_cells: u32,
    profile: &TrafficProfile,
    percentile: f64,
    trials: u64,
) -> Result<MuxReport> {
    profile.validate()?;
    if n_cells == 0 {
        return Err(Error::Domain("need at least one cell".into()));
    }
    if !(percentile > 0.0 && percentile < 100.0) {
        return Err(Error::Domain("percentile must lie in (0, 100)".into()));
    }
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }

    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let chunk = trials.div_ceil(workers as u64);
    let mut samples: Vec<f64> = Vec::with_capacity(trials as usize);
    let partials: Vec<Vec<f64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let profile = profile.clone();
                scope.spawn(move || {
                    let lo = w * chunk;
                    let hi = (lo + chunk).min(trials);
                    (lo..hi)
                        .map(|tti| {
                            (0..n_cells as u64)
                                .map(|cell| gen_load(&profile, cell, tti))
                                .sum::<f64>()
                        })
                        .collect::<Vec<f64>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for p in partials {
        samples.extend(p);
    }
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // nearest-rank: the ceil(p/100 * N)-th smallest sample
    let rank = ((percentile / 100.0) * trials as f64).ceil().max(1.0) as usize;
    let percentile_demand = samples[rank.min(samples.len()) - 1];
    let sum_peaks = n_cells as f64 * profile.peak_mbps;
    let gain = if percentile_demand > 0.0 {
        sum_peaks / percentile_demand
    } else {
        f64::INFINITY
    };
    let tail = trials as f64 * (1.0 - percentile / 100.0);
    let precision_warning = if tail < 10.0 {
        Some(format!(
            "only {tail:.1} expected samples above the {percentile} percentile; increase trials"
        ))
    } else {
        None
    };

    // fixed 20-bucket histogram over [0, sum_peaks]
    let buckets = 20usize;
    let width = (sum_peaks / buckets as f64).max(f64::MIN_POSITIVE);
    let mut histogram = vec![0u64; buckets];
    for &s in &samples {
        let idx = ((s / width) as usize).min(buckets - 1);
        histogram[idx] += 1;
    }
    let histogram = histogram
        .into_iter()
        .enumerate()
        .map(|(i, c)| ((i + 1) as f64 * width, c))
        .collect();

    Ok(MuxReport {
        n_cells,
        percentile,
        percentile_demand_mbps: percentile_demand,
        sum_peaks_mbps: sum_peaks,
        mux_gain: gain,
        trials,
        precision_warning,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_off(activity: f64, peak: f64, seed: u64) -> TrafficProfile {
        TrafficProfile {
            model: TrafficModel::OnOff,
            activity,
            peak_mbps: peak,
            seed,
        }
    }

    #[test]
    fn constant_profile_is_constant() {
        let p = TrafficProfile {
            model: TrafficModel::Constant,
            activity: 0.7,
            peak_mbps: 50.0,
            seed: 3,
        };
        for tti in 0..100 {
            assert_eq!(gen_load(&p, 0, tti), 35.0);
        }
    }

    #[test]
    fn on_off_extremes() {
        let always = on_off(1.0, 80.0, 1);
        let never = on_off(0.0, 80.0, 1);
        for tti in 0..1000 {
            assert_eq!(gen_load(&always, 2, tti), 80.0);
            assert_eq!(gen_load(&never, 2, tti), 0.0);
        }
    }

    #[test]
    fn on_off_empirical_mean() {
        let p = on_off(0.5, 100.0, 42);
        let n = 100_000u64;
        let mean = (0..n).map(|tti| gen_load(&p, 0, tti)).sum::<f64>() / n as f64;
        assert!((mean - 50.0).abs() < 0.5, "mean {mean}");
    }

    #[test]
    fn cells_are_decorrelated() {
        let p = on_off(0.5, 1.0, 9);
        let n = 50_000u64;
        let matches = (0..n)
            .filter(|&tti| gen_load(&p, 0, tti) == gen_load(&p, 1, tti))
            .count();
        let frac = matches as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.02, "agreement {frac}");
    }

    #[test]
    fn single_cell_gain_is_one() {
        let report = mux_gain(1, &on_off(1.0, 60.0, 7), 95.0, 10_000).unwrap();
        assert_eq!(report.mux_gain, 1.0);
    }

    #[test]
    fn full_activity_gain_is_one() {
        let report = mux_gain(10, &on_off(1.0, 60.0, 7), 95.0, 10_000).unwrap();
        assert_eq!(report.mux_gain, 1.0);
    }

    #[test]
    fn binomial_oracle_ten_cells() {
        // exact Binomial(10, 0.5) nearest-rank 95th percentile is 8 busy cells
        let report = mux_gain(10, &on_off(0.5, 100.0, 1234), 95.0, 100_000).unwrap();
        assert!(
            (report.percentile_demand_mbps - 800.0).abs() <= 100.0,
            "p95 {}",
            report.percentile_demand_mbps
        );
        assert!((report.mux_gain - 1.25).abs() <= 0.2);
    }

    #[test]
    fn gain_nonincreasing_in_percentile() {
        let p = on_off(0.5, 100.0, 5);
        let g90 = mux_gain(10, &p, 90.0, 50_000).unwrap().mux_gain;
        let g99 = mux_gain(10, &p, 99.0, 50_000).unwrap().mux_gain;
        assert!(g99 <= g90);
    }

    #[test]
    fn seeded_runs_reproduce_bit_exact() {
        let p = on_off(0.5, 100.0, 77);
        let a = mux_gain(10, &p, 95.0, 20_000).unwrap();
        let b = mux_gain(10, &p, 95.0, 20_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn argument_validation() {
        let p = on_off(0.5, 1.0, 0);
        assert!(mux_gain(0, &p, 95.0, 100).is_err());
        assert!(mux_gain(1, &p, 0.0, 100).is_err());
        assert!(mux_gain(1, &p, 100.0, 100).is_err());
        assert!(mux_gain(1, &on_off(1.5, 1.0, 0), 95.0, 100).is_err());
        let low_trials = mux_gain(5, &p, 99.0, 100).unwrap();
        assert!(low_trials.precision_warning.is_some());
    }
}
