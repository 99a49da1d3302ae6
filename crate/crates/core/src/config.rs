//! Radio cell parameterization and LTE numerology constants.
//!
//! The 100 MHz entry is back-derived from the goodput tables (6000 used
//! subcarriers reproduce the 378 Mbps single-layer 64QAM cell); it is a
//! working convention of this toolkit, not standard 5G numerology.

use crate::error::{Error, Result};
use crate::rat::{int, parse_decimal, rat, Rat};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Channel bandwidth of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Bandwidth {
    Mhz1_4,
    Mhz3,
    Mhz5,
    Mhz10,
    Mhz15,
    Mhz20,
    Mhz100,
}

impl Bandwidth {
    pub const ALL: [Bandwidth; 7] = [
        Bandwidth::Mhz1_4,
        Bandwidth::Mhz3,
        Bandwidth::Mhz5,
        Bandwidth::Mhz10,
        Bandwidth::Mhz15,
        Bandwidth::Mhz20,
        Bandwidth::Mhz100,
    ];

    /// The six LTE bandwidths covered by the per-split capacity table.
    pub const LTE: [Bandwidth; 6] = [
        Bandwidth::Mhz1_4,
        Bandwidth::Mhz3,
        Bandwidth::Mhz5,
        Bandwidth::Mhz10,
        Bandwidth::Mhz15,
        Bandwidth::Mhz20,
    ];

    pub fn mhz(self) -> Rat {
        match self {
            Bandwidth::Mhz1_4 => rat(7, 5),
            Bandwidth::Mhz3 => int(3),
            Bandwidth::Mhz5 => int(5),
            Bandwidth::Mhz10 => int(10),
            Bandwidth::Mhz15 => int(15),
            Bandwidth::Mhz20 => int(20),
            Bandwidth::Mhz100 => int(100),
        }
    }

    /// Used subcarriers per subframe.
    pub fn n_sc(self) -> u32 {
        match self {
            Bandwidth::Mhz1_4 => 72,
            Bandwidth::Mhz3 => 180,
            Bandwidth::Mhz5 => 300,
            Bandwidth::Mhz10 => 600,
            Bandwidth::Mhz15 => 900,
            Bandwidth::Mhz20 => 1200,
            Bandwidth::Mhz100 => 6000,
        }
    }

    /// Resource blocks (12 subcarriers each).
    pub fn n_rb(self) -> u32 {
        self.n_sc() / 12
    }

    pub fn from_mhz_str(s: &str) -> Result<Bandwidth> {
        match s.trim() {
            "1.4" => Ok(Bandwidth::Mhz1_4),
            "3" => Ok(Bandwidth::Mhz3),
            "5" => Ok(Bandwidth::Mhz5),
            "10" => Ok(Bandwidth::Mhz10),
            "15" => Ok(Bandwidth::Mhz15),
            "20" => Ok(Bandwidth::Mhz20),
            "100" => Ok(Bandwidth::Mhz100),
            other => Err(Error::Config(format!(
                "unknown cell bandwidth {other} MHz (expected 1.4, 3, 5, 10, 15, 20 or 100)"
            ))),
        }
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bandwidth::Mhz1_4 => write!(f, "1.4"),
            Bandwidth::Mhz3 => write!(f, "3"),
            Bandwidth::Mhz5 => write!(f, "5"),
            Bandwidth::Mhz10 => write!(f, "10"),
            Bandwidth::Mhz15 => write!(f, "15"),
            Bandwidth::Mhz20 => write!(f, "20"),
            Bandwidth::Mhz100 => write!(f, "100"),
        }
    }
}

/// Fixed transport-layer constants used by the CBR split formulas.
pub struct TransportConstants;

impl TransportConstants {
    /// Bits per I or Q sample on the CPRI path.
    pub const M_BITS_PER_SAMPLE: u32 = 15;

    /// Nominal chip rate in MHz.
    pub fn f_chip_mhz() -> Rat {
        rat(96, 25) // 3.84
    }

    /// Line-coding expansion (8b/10b).
    pub fn f_coding() -> Rat {
        rat(10, 8)
    }

    /// CPRI control-word expansion.
    pub fn f_control() -> Rat {
        rat(16, 15)
    }

    /// Cyclic-prefix removal saving: Ts / (Ts + Tcp) ~ 14/15.
    pub fn cp_saving() -> Rat {
        rat(14, 15)
    }

    /// Channel code rate used by the dimensioning tables.
    pub fn k_code_rate() -> Rat {
        rat(11, 12)
    }

    /// Sampling frequency in MHz for a given LTE bandwidth.
    pub fn f_sampling_mhz(bw: Bandwidth) -> Result<Rat> {
        let v = match bw {
            Bandwidth::Mhz1_4 => rat(48, 25),   // 1.92
            Bandwidth::Mhz3 => rat(96, 25),     // 3.84
            Bandwidth::Mhz5 => rat(192, 25),    // 7.68
            Bandwidth::Mhz10 => rat(384, 25),   // 15.36
            Bandwidth::Mhz15 => rat(576, 25),   // 23.04
            Bandwidth::Mhz20 => rat(768, 25),   // 30.72
            Bandwidth::Mhz100 => {
                return Err(Error::Config(
                    "no sampling frequency defined for the 100 MHz cell".into(),
                ))
            }
        };
        Ok(v)
    }

    /// FFT size per LTE bandwidth.
    pub fn n_fft(bw: Bandwidth) -> Result<u32> {
        let v = match bw {
            Bandwidth::Mhz1_4 => 128,
            Bandwidth::Mhz3 => 256,
            Bandwidth::Mhz5 => 512,
            Bandwidth::Mhz10 => 1024,
            Bandwidth::Mhz15 => 1536,
            Bandwidth::Mhz20 => 2048,
            Bandwidth::Mhz100 => {
                return Err(Error::Config("no FFT size defined for the 100 MHz cell".into()))
            }
        };
        Ok(v)
    }
}

/// Subcarrier bandwidth, fixed at 15 kHz (expressed in MHz).
pub fn bw_sc_mhz() -> Rat {
    rat(15, 1000)
}

/// Radio cell parameterization feeding every dimensioning formula.
#[derive(Debug, Clone, Serialize)]
pub struct CellConfig {
    pub bandwidth: Bandwidth,
    pub n_sc: u32,
    pub n_rb: u32,
    /// Symbols per subframe (normal cyclic prefix).
    pub n_sy_psf: u32,
    /// Modulation order in bits per symbol.
    pub o_m: u32,
    pub mimo_layers: u32,
    pub n_ant: u32,
    /// Control-overhead fraction in [0, 1).
    #[serde(serialize_with = "ser_rat")]
    pub gamma: Rat,
    /// Bits per I/Q pair.
    pub iq_bitwidth: u32,
    /// Soft-bit bitwidth.
    pub s_bw: u32,
    /// Additive control/signaling overhead on the 7.3 downlink, Mbps.
    #[serde(serialize_with = "ser_rat")]
    pub e1_mbps: Rat,
    /// Code-rate convention for load-dependent demand accounting. The
    /// dimensioning tables count offered load directly in fronthaul bits
    /// (rate 1); the emulator cross-checks pass its actual codec rate here.
    #[serde(serialize_with = "ser_rat")]
    pub code_rate: Rat,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(crate::rat::to_f64(*r))
}

impl CellConfig {
    pub fn new(bandwidth: Bandwidth) -> CellConfig {
        CellConfig {
            bandwidth,
            n_sc: bandwidth.n_sc(),
            n_rb: bandwidth.n_rb(),
            n_sy_psf: 14,
            o_m: 6,
            mimo_layers: 1,
            n_ant: 1,
            gamma: rat(1, 4),
            iq_bitwidth: 32,
            s_bw: 8,
            e1_mbps: int(133),
            code_rate: int(1),
        }
    }

    pub fn with_o_m(mut self, o_m: u32) -> Self {
        self.o_m = o_m;
        self
    }

    pub fn with_layers(mut self, layers: u32) -> Self {
        self.mimo_layers = layers;
        self
    }

    pub fn with_n_ant(mut self, n_ant: u32) -> Self {
        self.n_ant = n_ant;
        self
    }

    pub fn with_gamma(mut self, gamma: Rat) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_s_bw(mut self, s_bw: u32) -> Self {
        self.s_bw = s_bw;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if ![2, 4, 6, 8].contains(&self.o_m) {
            return Err(Error::Config(format!(
                "modulation order {} not in {{2, 4, 6, 8}}",
                self.o_m
            )));
        }
        if self.gamma < int(0) || self.gamma >= int(1) {
            return Err(Error::Config("gamma must lie in [0, 1)".into()));
        }
        if self.n_sc != 12 * self.n_rb {
            return Err(Error::Config(format!(
                "n_sc = {} is not 12 * n_rb = {}",
                self.n_sc,
                12 * self.n_rb
            )));
        }
        if ![1, 2, 4, 8].contains(&self.mimo_layers) {
            return Err(Error::Config(format!(
                "MIMO layer count {} not in {{1, 2, 4, 8}}",
                self.mimo_layers
            )));
        }
        if self.n_sy_psf == 0 || self.iq_bitwidth == 0 {
            return Err(Error::Config("counts must be positive".into()));
        }
        if !(2..=16).contains(&self.s_bw) {
            return Err(Error::Config(format!("soft-bit bitwidth {} not in [2, 16]", self.s_bw)));
        }
        if self.e1_mbps < int(0) {
            return Err(Error::Config("E1 overhead must be nonnegative".into()));
        }
        if self.code_rate <= int(0) || self.code_rate > int(1) {
            return Err(Error::Config("code rate must lie in (0, 1]".into()));
        }
        Ok(())
    }

    /// Load a cell configuration from a plain-text `key = value` file.
    ///
    /// Recognized keys: `bandwidth_mhz`, `o_m`, `mimo_layers`, `n_ant`,
    /// `gamma`, `iq_bitwidth`, `s_bw`, `e1_mbps`, `n_sy_psf`. Lines starting
    /// with `#` are comments.
    pub fn from_file(path: &Path) -> Result<CellConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_kv_text(&text)
    }

    pub fn from_kv_text(text: &str) -> Result<CellConfig> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        let bw = match map.get("bandwidth_mhz") {
            Some(v) => Bandwidth::from_mhz_str(v)?,
            None => return Err(Error::Config("missing bandwidth_mhz".into())),
        };
        let mut cfg = CellConfig::new(bw);
        let parse_u32 = |k: &str, v: &str| -> Result<u32> {
            v.parse()
                .map_err(|_| Error::Config(format!("{k}: invalid integer {v:?}")))
        };
        for (k, v) in &map {
            match k.as_str() {
                "bandwidth_mhz" => {}
                "o_m" => cfg.o_m = parse_u32(k, v)?,
                "mimo_layers" => cfg.mimo_layers = parse_u32(k, v)?,
                "n_ant" => cfg.n_ant = parse_u32(k, v)?,
                "n_sy_psf" => cfg.n_sy_psf = parse_u32(k, v)?,
                "iq_bitwidth" => cfg.iq_bitwidth = parse_u32(k, v)?,
                "s_bw" => cfg.s_bw = parse_u32(k, v)?,
                "gamma" => cfg.gamma = parse_decimal(v)?,
                "e1_mbps" => cfg.e1_mbps = parse_decimal(v)?,
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
