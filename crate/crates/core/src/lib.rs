//! Engineering toolkit for Cloud-RAN fronthaul dimensioning around the
//! bidirectional 7.3 functional split.
//!
//! The crate is organized as:
//!
//! - [`rat`]: exact rational arithmetic and display rounding for every
//!   dimensioning figure.
//! - [`config`]: cell parameterization and LTE numerology constants.
//! - [`dimensioning`]: per-split bandwidth calculus, conversion relations,
//!   efficiency gains, and the FS-I..FS-VII capacity table.
//! - [`placement`]: HARQ latency budgets and RU-DU distance feasibility.
//! - [`phy`]: a toy PHY chain (CRC, convolutional code, QAM, AWGN, max-log
//!   LLRs, soft-bit quantization, parallel Viterbi) that makes the 7.3 split
//!   executable.
//! - [`emulator`]: a packet-framed fronthaul link between an emulated RU and
//!   DU with bandwidth/latency reports.
//! - [`traffic`]: load models and Monte Carlo statistical-multiplexing gains.

pub mod config;
pub mod dimensioning;
pub mod emulator;
pub mod error;
pub mod phy;
pub mod placement;
pub mod rat;
pub mod traffic;

pub use config::{Bandwidth, CellConfig};
pub use dimensioning::{Direction, FronthaulDemand, Split};
pub use emulator::{BandwidthReport, SessionConfig, SplitMode, TransportKind};
pub use error::{Error, Result};
pub use placement::LatencyBudget;
pub use traffic::{MuxReport, TrafficModel, TrafficProfile};
