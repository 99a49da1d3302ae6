//! Fronthaul dimensioning calculus for the 3GPP functional splits.
//!
//! Pure, stateless functions over exact rationals. Each public operation maps
//! to one bandwidth formula or published table: peak goodput, the FS-VI/7.3
//! downlink demand with its additive E1 overhead, the 7.2 <-> 7.3 conversion
//! relations, the CPRI (split 8) and frequency-domain I/Q (split 7.1) constant
//! rates, and the FS-I..FS-VII capacity table.
//!
//! Conventions worth knowing:
//! - peak-rate tables use gamma = 0.25 by default; the FS-I..FS-VII capacity
//!   table uses gamma = 0 and O_m = 6 (the source tables mix both).
//! - E1 = 133 Mbps is a constant additive term, not scaled with bandwidth.
//! - the split 7.1 formula gives 1440 Mbps at 20 MHz; the published table
//!   prints 1140.0, which we treat as a typo and flag in `capacity_table`.

use crate::config::{bw_sc_mhz, Bandwidth, CellConfig, TransportConstants};
use crate::error::{Error, Result};
use crate::rat::{int, rat, to_f64, Rat};
use serde::Serialize;
use std::fmt;

/// Functional split identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Split {
    /// Split 8 (CPRI time-domain I/Q).
    S8,
    /// Split 7.1 (frequency-domain I/Q).
    S71,
    /// Split 7.2 (resource-grid I/Q).
    S72,
    /// Bidirectional split 7.3 (hard bits DL, soft bits UL).
    S73,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Split::S8 => write!(f, "S8"),
            Split::S71 => write!(f, "S7.1"),
            Split::S72 => write!(f, "S7.2"),
            Split::S73 => write!(f, "S7.3"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Dl,
    Ul,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Dl => write!(f, "DL"),
            Direction::Ul => write!(f, "UL"),
        }
    }
}

/// Computed bandwidth requirement for a (split, direction, load) triple.
#[derive(Debug, Clone, PartialEq)]
pub struct FronthaulDemand {
    pub split: Split,
    pub direction: Direction,
    pub rate_mbps: Rat,
    /// True iff the rate scales with offered load (split 7.3 only).
    pub load_dependent: bool,
}

impl FronthaulDemand {
    pub fn rate_mbps_f64(&self) -> f64 {
        to_f64(self.rate_mbps)
    }
}

fn check_o_m(o_m: u32) -> Result<()> {
    if ![2, 4, 6, 8].contains(&o_m) {
        return Err(Error::Domain(format!("modulation order {o_m} not in {{2, 4, 6, 8}}")));
    }
    Ok(())
}

/// Downlink peak user data rate (goodput) in Mbps:
/// N_sc * N_sy_psf * O_m * (1 - gamma) * layers, per 1 ms subframe.
pub fn peak_rate_dl(cfg: &CellConfig) -> Result<Rat> {
    cfg.validate()?;
    let bits_per_subframe =
        int((cfg.n_sc as i128) * (cfg.n_sy_psf as i128) * (cfg.o_m as i128) * (cfg.mimo_layers as i128));
    Ok(bits_per_subframe * (int(1) - cfg.gamma) / int(1000))
}

/// Uplink peak rate; a single radio chain (SISO) unless layers are overridden.
pub fn peak_rate_ul(cfg: &CellConfig, layers_override: Option<u32>) -> Result<Rat> {
    let mut ul = cfg.clone();
    ul.mimo_layers = layers_override.unwrap_or(1);
    peak_rate_dl(&ul)
}

/// Split 7.3 downlink demand at peak: goodput plus the constant E1 overhead.
pub fn fs73_dl_demand(cfg: &CellConfig) -> Result<FronthaulDemand> {
    let rate = peak_rate_dl(cfg)? + cfg.e1_mbps;
    Ok(FronthaulDemand {
        split: Split::S73,
        direction: Direction::Dl,
        rate_mbps: rate,
        load_dependent: true,
    })
}

/// R_7.2 = R_7.3 * iq_bitwidth / O_m (each O_m-bit group becomes one I/Q pair).
pub fn fs72_rate_from_fs73(r73_mbps: Rat, o_m: u32, iq_bitwidth: u32) -> Result<Rat> {
    check_o_m(o_m)?;
    if r73_mbps < int(0) {
        return Err(Error::Domain("rate must be nonnegative".into()));
    }
    Ok(r73_mbps * rat(iq_bitwidth as i128, o_m as i128))
}

/// Uplink R_7.3 = R_7.2 * O_m / iq_bitwidth * S_bw (demodulated soft bits).
pub fn fs73_ul_rate_from_fs72(r72_mbps: Rat, o_m: u32, iq_bitwidth: u32, s_bw: u32) -> Result<Rat> {
    check_o_m(o_m)?;
    if iq_bitwidth == 0 {
        return Err(Error::Domain("iq_bitwidth must be positive".into()));
    }
    if s_bw == 0 {
        return Err(Error::Domain("soft-bit bitwidth must be positive".into()));
    }
    if r72_mbps < int(0) {
        return Err(Error::Domain("rate must be nonnegative".into()));
    }
    Ok(r72_mbps * rat(o_m as i128, iq_bitwidth as i128) * int(s_bw as i128))
}

/// Bandwidth efficiency of 7.3 over 7.2: 32/O_m downlink, 32/(O_m * S_bw) uplink.
/// Returned unrounded; display rounds to one decimal to match the table.
pub fn gain_ratio(direction: Direction, o_m: u32, s_bw: u32) -> Result<Rat> {
    check_o_m(o_m)?;
    match direction {
        Direction::Dl => Ok(rat(32, o_m as i128)),
        Direction::Ul => {
            if s_bw == 0 {
                return Err(Error::Domain("soft-bit bitwidth must be positive".into()));
            }
            Ok(rat(32, (o_m as i128) * (s_bw as i128)))
        }
    }
}

/// Split 8 / FS-I constant rate: 2 * M * f_s * F_coding * F_control * N_ant.
pub fn cpri_rate(cfg: &CellConfig) -> Result<Rat> {
    let f_s = TransportConstants::f_sampling_mhz(cfg.bandwidth)?;
    Ok(int(2 * TransportConstants::M_BITS_PER_SAMPLE as i128)
        * f_s
        * TransportConstants::f_coding()
        * TransportConstants::f_control()
        * int(cfg.n_ant as i128))
}

/// Split 7.1 / FS-III constant rate over used subcarriers (no oversampling):
/// 2 * M * N_sc * BW_sc * F_coding * F_control * N_ant.
pub fn freq_domain_iq_rate(cfg: &CellConfig) -> Result<Rat> {
    cfg.validate()?;
    Ok(int(2 * TransportConstants::M_BITS_PER_SAMPLE as i128)
        * int(cfg.n_sc as i128)
        * bw_sc_mhz()
        * TransportConstants::f_coding()
        * TransportConstants::f_control()
        * int(cfg.n_ant as i128))
}

/// Resource-grid I/Q rate used for split 7.2 CBR accounting:
/// N_sc * N_sy_psf * iq_bitwidth * N_ant bits per 1 ms subframe.
pub fn grid_iq_rate(cfg: &CellConfig) -> Result<Rat> {
    cfg.validate()?;
    Ok(int(
        (cfg.n_sc as i128) * (cfg.n_sy_psf as i128) * (cfg.iq_bitwidth as i128) * (cfg.n_ant as i128),
    ) / int(1000))
}

/// One row of the FS-I..FS-VII capacity table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CapacityRow {
    FsI,
    FsII,
    FsIII,
    FsIV,
    FsV,
    FsVI,
    FsVII,
}

impl CapacityRow {
    pub const ALL: [CapacityRow; 7] = [
        CapacityRow::FsI,
        CapacityRow::FsII,
        CapacityRow::FsIII,
        CapacityRow::FsIV,
        CapacityRow::FsV,
        CapacityRow::FsVI,
        CapacityRow::FsVII,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CapacityRow::FsI => "FS-I",
            CapacityRow::FsII => "FS-II",
            CapacityRow::FsIII => "FS-III",
            CapacityRow::FsIV => "FS-IV",
            CapacityRow::FsV => "FS-V",
            CapacityRow::FsVI => "FS-VI",
            CapacityRow::FsVII => "FS-VII",
        }
    }
}

/// A capacity-table cell with a flag for the one published value the formula
/// contradicts (FS-III at 20 MHz: formula 1440, table prints 1140.0).
#[derive(Debug, Clone)]
pub struct CapacityCell {
    pub row: CapacityRow,
    pub bandwidth: Bandwidth,
    pub rate_mbps: Rat,
    pub source_typo: bool,
}

/// Required fronthaul capacity per split and LTE bandwidth, in Mbps.
///
/// Table conventions: 2 antennas for the I/Q rows, O_m = 6 and gamma = 0 for
/// the bit rows, FS-II = FS-I scaled by cyclic-prefix removal, FS-IV/FS-V are
/// used-RE I/Q per antenna / after combining, FS-VII = FS-VI * k (k = 11/12).
pub fn capacity_table() -> Vec<CapacityCell> {
    let mut cells = Vec::with_capacity(42);
    for row in CapacityRow::ALL {
        for bw in Bandwidth::LTE {
            let cfg = CellConfig::new(bw).with_n_ant(2).with_gamma(int(0));
            let m = int(2 * TransportConstants::M_BITS_PER_SAMPLE as i128);
            let rate = match row {
                CapacityRow::FsI => cpri_rate(&cfg).unwrap(),
                CapacityRow::FsII => cpri_rate(&cfg).unwrap() * TransportConstants::cp_saving(),
                CapacityRow::FsIII => freq_domain_iq_rate(&cfg).unwrap(),
                CapacityRow::FsIV => {
                    m * int((bw.n_sc() as i128) * 14) / int(1000) * int(cfg.n_ant as i128)
                }
                CapacityRow::FsV => m * int((bw.n_sc() as i128) * 14) / int(1000),
                CapacityRow::FsVI => int((bw.n_sc() as i128) * 14 * 6) / int(1000),
                CapacityRow::FsVII => {
                    int((bw.n_sc() as i128) * 14 * 6) / int(1000) * TransportConstants::k_code_rate()
                }
            };
            cells.push(CapacityCell {
                row,
                bandwidth: bw,
                rate_mbps: rate,
                source_typo: row == CapacityRow::FsIII && bw == Bandwidth::Mhz20,
            });
        }
    }
    cells
}

/// Demand for a (split, direction) pair at a given offered load.
///
/// Split 7.3 scales with load: DL carries coded bits (offered / code_rate)
/// plus E1; UL carries S_bw soft bits per coded bit plus E1. The other splits
/// are constant bit rate regardless of load.
pub fn demand(
    split: Split,
    direction: Direction,
    cfg: &CellConfig,
    offered_load_mbps: Rat,
) -> Result<FronthaulDemand> {
    cfg.validate()?;
    if offered_load_mbps < int(0) {
        return Err(Error::Domain("offered load must be nonnegative".into()));
    }
    let peak = match direction {
        Direction::Dl => peak_rate_dl(cfg)?,
        Direction::Ul => peak_rate_ul(cfg, None)?,
    };
    if offered_load_mbps > peak {
        return Err(Error::Capacity {
            offered_mbps: to_f64(offered_load_mbps),
            peak_mbps: to_f64(peak),
        });
    }
    let rate = match split {
        Split::S8 => cpri_rate(cfg)?,
        Split::S71 => freq_domain_iq_rate(cfg)?,
        Split::S72 => grid_iq_rate(cfg)?,
        Split::S73 => {
            let coded = offered_load_mbps / cfg.code_rate;
            match direction {
                Direction::Dl => coded + cfg.e1_mbps,
                Direction::Ul => coded * int(cfg.s_bw as i128) + cfg.e1_mbps,
            }
        }
    };
    Ok(FronthaulDemand {
        split,
        direction,
        rate_mbps: rate,
        load_dependent: split == Split::S73,
    })
}

/// Modulation usage mix; fractions are normalized over the provided entries.
#[derive(Debug, Clone)]
pub struct ModulationMix {
    weights: Vec<(u32, Rat)>,
}

impl ModulationMix {
    pub fn new(weights: &[(u32, Rat)]) -> Result<ModulationMix> {
        if weights.is_empty() {
            return Err(Error::Domain("modulation mix must be nonempty".into()));
        }
        let mut total = int(0);
        for &(o_m, w) in weights {
            check_o_m(o_m)?;
            if w < int(0) {
                return Err(Error::Domain("mix weights must be nonnegative".into()));
            }
            total += w;
        }
        if total == int(0) {
            return Err(Error::Domain("modulation mix must have positive total weight".into()));
        }
        Ok(ModulationMix {
            weights: weights.iter().map(|&(o_m, w)| (o_m, w / total)).collect(),
        })
    }

    pub fn fractions(&self) -> &[(u32, Rat)] {
        &self.weights
    }
}

/// Expected 7.3 downlink demand under a modulation usage mix, each modulation
/// loaded at `load_fraction` of its own peak.
pub fn expected_rate_with_modmix(
    cfg: &CellConfig,
    mix: &ModulationMix,
    load_fraction: Rat,
) -> Result<Rat> {
    if load_fraction < int(0) || load_fraction > int(1) {
        return Err(Error::Domain("load fraction must lie in [0, 1]".into()));
    }
    let mut expected = int(0);
    for &(o_m, frac) in mix.fractions() {
        let per_mod = cfg.clone().with_o_m(o_m);
        let peak = peak_rate_dl(&per_mod)?;
        let d = demand(Split::S73, Direction::Dl, &per_mod, peak * load_fraction)?;
        expected += frac * d.rate_mbps;
    }
    Ok(expected)
}
