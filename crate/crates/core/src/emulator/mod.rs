//! Packet-framed fronthaul emulator: wire format, datagram transports, and
//! RU/DU session runners with bandwidth and latency reporting.

pub mod frame;
pub mod session;
pub mod transport;

pub use frame::{frame_decode, frame_encode, Frame, FrameHeader, HEADER_LEN, MAX_PAYLOAD};
pub use session::{
    cbr_grid_bytes_per_tti, run_downlink, run_uplink, sweep_load, BandwidthReport, SessionConfig,
    SplitMode, SweepPoint,
};
pub use transport::TransportKind;
