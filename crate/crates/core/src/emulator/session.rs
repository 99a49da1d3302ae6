//! Packet-framed fronthaul sessions between an emulated RU and DU.
//!
//! A session streams `duration_ms` TTIs (1 ms each) over a transport:
//!
//! - downlink 7.3: per TTI, the offered load becomes a CRC-protected
//!   transport block, convolutionally encoded; each code block travels as one
//!   frame of packed hard coded bits. The DU meters rates only (hard bits are
//!   handed onward to modulation beyond the emulated link).
//! - uplink 7.3: the RU runs the receive PHY front end - modulate, AWGN,
//!   max-log demap, quantize - and ships `s_bw`-bit soft words; the DU
//!   Viterbi-decodes each TTI on a worker pool and checks the CRC.
//! - 7.2 CBR: a constant resource-grid byte stream per TTI, independent of
//!   offered load.
//!
//! Every TTI ends with an empty heartbeat frame, so a zero-load session still
//! produces traffic and the receiver can detect the end of the stream.
//! Sequence numbers increase by one per frame; with the in-process transport
//! byte conservation is exact.
//!
//! Data-frame payload layouts (all integers big-endian):
//!
//! - downlink 7.3: `coded_bit_count (4B) | packed coded bits, MSB-first`
//! - uplink 7.3: `word_count (4B) | quantizer scale as f32 bits (4B) |
//!   packed s_bw-bit two's-complement words, MSB-first`
//! - 7.2 CBR: raw grid bytes.

use super::frame::{frame_decode, frame_encode, Frame, FrameHeader, MAX_PAYLOAD};
use super::transport::{open_pair, FrameTx, TransportKind};
use crate::config::CellConfig;
use crate::dimensioning::{peak_rate_dl, peak_rate_ul, Direction};
use crate::error::{Error, Result};
use crate::phy::quantizer::SoftBitBlock;
use crate::phy::{self, TransportBlock};
use crate::rat::to_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::time::{Duration, Instant};

/// Which framing mode a session runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitMode {
    /// Bidirectional split 7.3 (hard bits DL, soft bits UL), load-dependent.
    S73,
    /// Split 7.2 constant-bit-rate resource-grid stream.
    S72Cbr,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionConfig {
    pub cell: CellConfig,
    pub split_mode: SplitMode,
    pub offered_load_mbps: f64,
    /// Session length in TTIs (1 ms each).
    pub duration_ms: u32,
    /// Channel SNR for the uplink PHY chain; `f64::INFINITY` = noiseless.
    pub snr_db: f64,
    pub transport: TransportKind,
    pub seed: u64,
    /// Sleep to real 1 ms TTI boundaries instead of virtual time.
    pub realtime_pacing: bool,
    /// Info bits per downlink code block.
    pub dl_codeblock_bits: usize,
    /// Info bits per uplink code block (kept small so the soft payload of one
    /// block fits a single frame even at s_bw = 16).
    pub ul_codeblock_bits: usize,
    /// DU-side Viterbi worker threads.
    pub decode_workers: usize,
    pub cell_id: u16,
}

impl SessionConfig {
    pub fn new(cell: CellConfig) -> SessionConfig {
        SessionConfig {
            cell,
            split_mode: SplitMode::S73,
            offered_load_mbps: 0.0,
            duration_ms: 100,
            snr_db: f64::INFINITY,
            transport: TransportKind::InProcess,
            seed: 0,
            realtime_pacing: false,
            dl_codeblock_bits: 6000,
            ul_codeblock_bits: 2000,
            decode_workers: 1,
            cell_id: 0,
        }
    }

    fn validate(&self, direction: Direction) -> Result<()> {
        self.cell.validate()?;
        if self.duration_ms == 0 {
            return Err(Error::Config("session must last at least one TTI".into()));
        }
        if self.duration_ms > u16::MAX as u32 {
            return Err(Error::Config("session longer than the 16-bit TTI id space".into()));
        }
        if !(self.offered_load_mbps >= 0.0) {
            return Err(Error::Config("offered load must be nonnegative".into()));
        }
        if self.decode_workers == 0 {
            return Err(Error::Config("need at least one decode worker".into()));
        }
        if self.dl_codeblock_bits < 8 || self.ul_codeblock_bits < 8 {
            return Err(Error::Config("code blocks must hold at least 8 info bits".into()));
        }
        // one coded block (plus prefix) must fit a single frame
        let dl_bytes = 2 * (self.dl_codeblock_bits + 6) / 8 + 5;
        if dl_bytes > MAX_PAYLOAD {
            return Err(Error::Config("downlink code block too large for one frame".into()));
        }
        let ul_bytes = 2 * (self.ul_codeblock_bits + 6) * 16 / 8 + 9;
        if ul_bytes > MAX_PAYLOAD {
            return Err(Error::Config("uplink code block too large for one frame".into()));
        }
        let peak = match direction {
            Direction::Dl => to_f64(peak_rate_dl(&self.cell)?),
            Direction::Ul => to_f64(peak_rate_ul(&self.cell, None)?),
        };
        if self.offered_load_mbps > peak * (1.0 + 1e-9) {
            return Err(Error::Capacity {
                offered_mbps: self.offered_load_mbps,
                peak_mbps: peak,
            });
        }
        Ok(())
    }
}

/// Measured outcome of one session, from the receiving (DU for UL, metering
/// for DL) side plus sender counters.
#[derive(Debug, Clone, Serialize)]
pub struct BandwidthReport {
    pub direction: Direction,
    pub split_mode: SplitMode,
    pub offered_load_mbps: f64,
    pub duration_ms: u32,
    /// All received wire bytes (headers, payloads, heartbeats) over the
    /// session duration.
    pub achieved_mbps: f64,
    /// Received data payload only.
    pub payload_mbps: f64,
    /// Header share of the received data frames (heartbeats excluded).
    pub overhead_fraction: f64,
    pub frames_sent: u64,
    pub frames_received: u64,
    /// Sequence-number gaps observed by the receiver.
    pub frames_lost: u64,
    pub bytes_sent: u64,
    pub bytes_received: u64,
    pub payload_bytes: u64,
    /// Coded bits produced by the sender across all data frames.
    pub coded_bits_sent: u64,
    pub info_bytes_sent: u64,
    /// Received data payload bytes per TTI, indexed by tti_id.
    pub per_tti_payload_bytes: Vec<u64>,
    /// CRC verdicts on decoded uplink transport blocks.
    pub crc_failures: u64,
    /// Decoded uplink payloads that differ from the transmitted ones.
    pub payload_mismatches: u64,
    pub decode_latency_p50_us: Option<f64>,
    pub decode_latency_p95_us: Option<f64>,
    pub decode_latency_p99_us: Option<f64>,
}

/// Deterministic payload for (seed, cell, tti); both endpoints can regenerate
/// it, which lets the DU verify decoded uplink content without a side channel.
fn tti_payload(seed: u64, cell_id: u16, tti: u16, len: usize) -> Vec<u8> {
    let mix = seed
        ^ (cell_id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (tti as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    let mut rng = ChaCha12Rng::seed_from_u64(mix);
    (0..len).map(|_| rng.gen()).collect()
}

/// Bytes of payload due in each TTI for a given offered load, spreading the
/// fractional remainder so the session total is exact to within one byte.
fn per_tti_bytes(offered_load_mbps: f64, duration_ms: u32) -> Vec<usize> {
    let mut acc = 0.0f64;
    let bits_per_tti = offered_load_mbps * 1000.0;
    (0..duration_ms)
        .map(|_| {
            acc += bits_per_tti;
            let bytes = (acc / 8.0).floor() as usize;
            acc -= bytes as f64 * 8.0;
            bytes
        })
        .collect()
}

/// Pack hard bits (one per byte) MSB-first, as used by downlink data frames.
pub fn pack_bits(bits: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b != 0 {
            out[i / 8] |= 0x80 >> (i % 8);
        }
    }
    out
}

/// Inverse of `pack_bits` given the bit count from the payload prefix.
pub fn unpack_bits(bytes: &[u8], count: usize) -> Vec<u8> {
    (0..count).map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1).collect()
}

struct TxStats {
    frames_sent: u64,
    bytes_sent: u64,
    coded_bits_sent: u64,
    info_bytes_sent: u64,
}

struct Sender<'a> {
    tx: Box<dyn FrameTx>,
    seq: u32,
    stats: TxStats,
    cfg: &'a SessionConfig,
    direction: Direction,
}

impl<'a> Sender<'a> {
    fn new(tx: Box<dyn FrameTx>, cfg: &'a SessionConfig, direction: Direction) -> Sender<'a> {
        Sender {
            tx,
            seq: 0,
            stats: TxStats {
                frames_sent: 0,
                bytes_sent: 0,
                coded_bits_sent: 0,
                info_bytes_sent: 0,
            },
            cfg,
            direction,
        }
    }

    fn header(&self, tti: u16, heartbeat: bool) -> FrameHeader {
        FrameHeader {
            direction: self.direction,
            split_cbr: self.cfg.split_mode == SplitMode::S72Cbr,
            heartbeat,
            seq: self.seq,
            tti_id: tti,
            cell_id: self.cfg.cell_id,
            o_m: self.cfg.cell.o_m as u8,
            s_bw: self.cfg.cell.s_bw as u8,
        }
    }

    fn send(&mut self, tti: u16, heartbeat: bool, payload: Vec<u8>) -> Result<()> {
        let frame = Frame::new(self.header(tti, heartbeat), payload)?;
        let bytes = frame_encode(&frame)?;
        self.tx.send(&bytes)?;
        self.seq += 1;
        self.stats.frames_sent += 1;
        self.stats.bytes_sent += bytes.len() as u64;
        Ok(())
    }
}

/// Downlink 7.3 RU feed: frame each code block's packed hard bits.
fn send_dl_tti(sender: &mut Sender, tti: u16, info_bytes: usize) -> Result<()> {
    if info_bytes > 0 {
        let payload = tti_payload(sender.cfg.seed, sender.cfg.cell_id, tti, info_bytes);
        let tb = TransportBlock::new(payload, tti as u32);
        for block in phy::encode(&tb, sender.cfg.dl_codeblock_bits)? {
            let mut body = Vec::with_capacity(4 + block.coded_bits.len() / 8 + 1);
            body.extend_from_slice(&(block.coded_bits.len() as u32).to_be_bytes());
            body.extend_from_slice(&pack_bits(&block.coded_bits));
            sender.stats.coded_bits_sent += block.coded_bits.len() as u64;
            sender.send(tti, false, body)?;
        }
        sender.stats.info_bytes_sent += info_bytes as u64;
    }
    sender.send(tti, true, Vec::new())
}

/// Uplink 7.3 RU chain: encode, modulate, pass through AWGN, demap to LLRs,
/// quantize, and frame the soft words. `clip` is fixed per session.
fn send_ul_tti(sender: &mut Sender, tti: u16, info_bytes: usize, clip: &mut Option<f32>) -> Result<()> {
    let cfg = sender.cfg;
    if info_bytes > 0 {
        let payload = tti_payload(cfg.seed, cfg.cell_id, tti, info_bytes);
        let tb = TransportBlock::new(payload, tti as u32);
        let noise_var = phy::noise_variance(cfg.snr_db).max(1e-9);
        for block in phy::encode(&tb, cfg.ul_codeblock_bits)? {
            let symbols = phy::modulate(&block.coded_bits, cfg.cell.o_m)?;
            let rx = phy::awgn(
                &symbols.to_complex(),
                cfg.snr_db,
                cfg.seed ^ ((tti as u64) << 20) ^ ((block.index as u64) << 4),
            );
            let mut llrs = phy::demodulate_llr(&rx, cfg.cell.o_m, noise_var)?;
            llrs.truncate(block.coded_bits.len());
            let clip_val = *clip.get_or_insert_with(|| phy::default_clip(&llrs));
            let soft = phy::quantize_llr(&llrs, cfg.cell.s_bw, clip_val)?;
            let mut body = Vec::new();
            body.extend_from_slice(&(soft.llr_words.len() as u32).to_be_bytes());
            body.extend_from_slice(&soft.scale.to_be_bytes());
            body.extend_from_slice(&soft.pack());
            sender.stats.coded_bits_sent += block.coded_bits.len() as u64;
            sender.send(tti, false, body)?;
        }
        sender.stats.info_bytes_sent += info_bytes as u64;
    }
    sender.send(tti, true, Vec::new())
}

/// 7.2 CBR RU feed: the full resource grid every TTI, regardless of load.
fn send_cbr_tti(sender: &mut Sender, tti: u16, grid: &[u8]) -> Result<()> {
    const CHUNK: usize = 8000;
    for chunk in grid.chunks(CHUNK) {
        sender.send(tti, false, chunk.to_vec())?;
    }
    sender.send(tti, true, Vec::new())
}

struct RxState {
    frames_received: u64,
    bytes_received: u64,
    payload_bytes: u64,
    data_wire_bytes: u64,
    frames_lost: u64,
    last_seq: Option<u32>,
    per_tti_payload_bytes: Vec<u64>,
    crc_failures: u64,
    payload_mismatches: u64,
    latencies_us: Vec<f64>,
}

impl RxState {
    fn new(duration_ms: u32) -> RxState {
        RxState {
            frames_received: 0,
            bytes_received: 0,
            payload_bytes: 0,
            data_wire_bytes: 0,
            frames_lost: 0,
            last_seq: None,
            per_tti_payload_bytes: vec![0; duration_ms as usize],
            crc_failures: 0,
            payload_mismatches: 0,
            latencies_us: Vec::new(),
        }
    }

    fn note(&mut self, wire_len: usize, frame: &Frame) -> Result<()> {
        self.frames_received += 1;
        self.bytes_received += wire_len as u64;
        if let Some(last) = self.last_seq {
            if frame.header.seq <= last {
                return Err(Error::Transport(format!(
                    "sequence number went backwards: {} after {last}",
                    frame.header.seq
                )));
            }
            self.frames_lost += (frame.header.seq - last - 1) as u64;
        } else {
            self.frames_lost += frame.header.seq as u64;
        }
        self.last_seq = Some(frame.header.seq);
        if !frame.header.heartbeat {
            self.payload_bytes += frame.payload.len() as u64;
            self.data_wire_bytes += wire_len as u64;
            if let Some(slot) = self.per_tti_payload_bytes.get_mut(frame.header.tti_id as usize) {
                *slot += frame.payload.len() as u64;
            }
        }
        Ok(())
    }
}

fn nearest_rank(sorted: &[f64], percentile: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((percentile / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    Some(sorted[rank.min(sorted.len()) - 1])
}

fn finish_report(
    cfg: &SessionConfig,
    direction: Direction,
    tx: TxStats,
    mut rx: RxState,
) -> BandwidthReport {
    let seconds = cfg.duration_ms as f64 / 1000.0;
    rx.latencies_us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    BandwidthReport {
        direction,
        split_mode: cfg.split_mode,
        offered_load_mbps: cfg.offered_load_mbps,
        duration_ms: cfg.duration_ms,
        achieved_mbps: rx.bytes_received as f64 * 8.0 / seconds / 1e6,
        payload_mbps: rx.payload_bytes as f64 * 8.0 / seconds / 1e6,
        overhead_fraction: if rx.data_wire_bytes > 0 {
            (rx.data_wire_bytes - rx.payload_bytes) as f64 / rx.data_wire_bytes as f64
        } else {
            0.0
        },
        frames_sent: tx.frames_sent,
        frames_received: rx.frames_received,
        frames_lost: rx.frames_lost,
        bytes_sent: tx.bytes_sent,
        bytes_received: rx.bytes_received,
        payload_bytes: rx.payload_bytes,
        coded_bits_sent: tx.coded_bits_sent,
        info_bytes_sent: tx.info_bytes_sent,
        per_tti_payload_bytes: rx.per_tti_payload_bytes,
        crc_failures: rx.crc_failures,
        payload_mismatches: rx.payload_mismatches,
        decode_latency_p50_us: nearest_rank(&rx.latencies_us, 50.0),
        decode_latency_p95_us: nearest_rank(&rx.latencies_us, 95.0),
        decode_latency_p99_us: nearest_rank(&rx.latencies_us, 99.0),
    }
}

fn pace(start: Instant, tti: u32, realtime: bool) {
    if realtime {
        let target = start + Duration::from_millis(tti as u64 + 1);
        let now = Instant::now();
        if target > now {
            std::thread::sleep(target - now);
        }
    }
}

/// Grid bytes per TTI for the 7.2 CBR stream: one I/Q pair per resource
/// element across `n_ant` antenna ports.
pub fn cbr_grid_bytes_per_tti(cell: &CellConfig) -> usize {
    (cell.n_sc as usize * cell.n_sy_psf as usize * cell.iq_bitwidth as usize * cell.n_ant as usize)
        / 8
}

/// Run a downlink session; the DU side meters rates and conservation.
pub fn run_downlink(cfg: &SessionConfig) -> Result<BandwidthReport> {
    cfg.validate(Direction::Dl)?;
    let (tx, mut rx) = open_pair(cfg.transport)?;
    let duration = cfg.duration_ms;
    let final_tti = (duration - 1) as u16;

    let report = std::thread::scope(|scope| -> Result<BandwidthReport> {
        let sender_handle = scope.spawn(move || -> Result<TxStats> {
            let mut sender = Sender::new(tx, cfg, Direction::Dl);
            let start = Instant::now();
            match cfg.split_mode {
                SplitMode::S73 => {
                    let budget = per_tti_bytes(cfg.offered_load_mbps, duration);
                    for tti in 0..duration {
                        send_dl_tti(&mut sender, tti as u16, budget[tti as usize])?;
                        pace(start, tti, cfg.realtime_pacing);
                    }
                }
                SplitMode::S72Cbr => {
                    let grid = tti_payload(cfg.seed, cfg.cell_id, 0, cbr_grid_bytes_per_tti(&cfg.cell));
                    for tti in 0..duration {
                        send_cbr_tti(&mut sender, tti as u16, &grid)?;
                        pace(start, tti, cfg.realtime_pacing);
                    }
                }
            }
            Ok(sender.stats)
        });

        let mut state = RxState::new(duration);
        while let Some(datagram) = rx.recv()? {
            let frame = frame_decode(&datagram)?;
            state.note(datagram.len(), &frame)?;
            if frame.header.heartbeat && frame.header.tti_id == final_tti {
                break;
            }
        }
        let stats = sender_handle.join().expect("sender thread panicked")?;
        Ok(finish_report(cfg, Direction::Dl, stats, state))
    })?;
    Ok(report)
}

/// Run an uplink session; the DU decodes each TTI's soft blocks on a worker
/// pool, timing the decode and verifying CRC and content.
pub fn run_uplink(cfg: &SessionConfig) -> Result<BandwidthReport> {
    cfg.validate(Direction::Ul)?;
    if cfg.split_mode != SplitMode::S73 {
        return Err(Error::Config("uplink sessions model split 7.3 only".into()));
    }
    let (tx, mut rx) = open_pair(cfg.transport)?;
    let duration = cfg.duration_ms;
    let final_tti = (duration - 1) as u16;
    let budget = per_tti_bytes(cfg.offered_load_mbps, duration);

    let report = std::thread::scope(|scope| -> Result<BandwidthReport> {
        let budget_ref = &budget;
        let sender_handle = scope.spawn(move || -> Result<TxStats> {
            let mut sender = Sender::new(tx, cfg, Direction::Ul);
            let mut clip: Option<f32> = None;
            let start = Instant::now();
            for tti in 0..duration {
                send_ul_tti(&mut sender, tti as u16, budget_ref[tti as usize], &mut clip)?;
                pace(start, tti, cfg.realtime_pacing);
            }
            Ok(sender.stats)
        });

        let mut state = RxState::new(duration);
        let mut pending: Vec<SoftBitBlock> = Vec::new();
        while let Some(datagram) = rx.recv()? {
            let frame = frame_decode(&datagram)?;
            state.note(datagram.len(), &frame)?;
            if frame.header.heartbeat {
                if !pending.is_empty() {
                    let blocks = std::mem::take(&mut pending);
                    let t0 = Instant::now();
                    let out = phy::decode_soft_parallel(
                        &blocks,
                        frame.header.tti_id as u32,
                        cfg.decode_workers,
                    )?;
                    state.latencies_us.push(t0.elapsed().as_secs_f64() * 1e6);
                    if !out.decoded.crc_ok {
                        state.crc_failures += 1;
                    }
                    let expected = tti_payload(
                        cfg.seed,
                        cfg.cell_id,
                        frame.header.tti_id,
                        out.decoded.block.payload.len(),
                    );
                    if out.decoded.block.payload != expected {
                        state.payload_mismatches += 1;
                    }
                }
                if frame.header.tti_id == final_tti {
                    break;
                }
            } else {
                let body = &frame.payload;
                if body.len() < 8 {
                    return Err(Error::Framing {
                        offset: body.len(),
                        reason: "uplink data frame shorter than its prefix".into(),
                    });
                }
                let count = u32::from_be_bytes([body[0], body[1], body[2], body[3]]) as usize;
                let scale = f32::from_be_bytes([body[4], body[5], body[6], body[7]]);
                pending.push(SoftBitBlock::unpack(
                    &body[8..],
                    count,
                    frame.header.s_bw as u32,
                    scale,
                )?);
            }
        }
        let stats = sender_handle.join().expect("sender thread panicked")?;
        Ok(finish_report(cfg, Direction::Ul, stats, state))
    })?;
    Ok(report)
}

/// One row of a load sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub load_fraction: f64,
    pub offered_dl_mbps: f64,
    pub offered_ul_mbps: f64,
    pub dl: BandwidthReport,
    pub ul: BandwidthReport,
}

/// Run paired downlink/uplink sessions at each load fraction of the cell's
/// directional peak rates.
pub fn sweep_load(base: &SessionConfig, load_fractions: &[f64]) -> Result<Vec<SweepPoint>> {
    let peak_dl = to_f64(peak_rate_dl(&base.cell)?);
    let peak_ul = to_f64(peak_rate_ul(&base.cell, None)?);
    let mut points = Vec::with_capacity(load_fractions.len());
    for &frac in load_fractions {
        if !(0.0..=1.0).contains(&frac) {
            return Err(Error::Domain(format!("load fraction {frac} not in [0, 1]")));
        }
        let mut dl_cfg = base.clone();
        dl_cfg.offered_load_mbps = peak_dl * frac;
        let mut ul_cfg = base.clone();
        ul_cfg.split_mode = SplitMode::S73;
        ul_cfg.offered_load_mbps = peak_ul * frac;
        points.push(SweepPoint {
            load_fraction: frac,
            offered_dl_mbps: dl_cfg.offered_load_mbps,
            offered_ul_mbps: ul_cfg.offered_load_mbps,
            dl: run_downlink(&dl_cfg)?,
            ul: run_uplink(&ul_cfg)?,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Bandwidth;

    fn base_session() -> SessionConfig {
        let mut cfg = SessionConfig::new(CellConfig::new(Bandwidth::Mhz10));
        cfg.duration_ms = 50;
        cfg.seed = 42;
        cfg
    }

    #[test]
    fn downlink_conserves_bytes_in_process() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 10.0;
        let report = run_downlink(&cfg).unwrap();
        assert_eq!(report.bytes_sent, report.bytes_received);
        assert_eq!(report.frames_sent, report.frames_received);
        assert_eq!(report.frames_lost, 0);
    }

    #[test]
    fn downlink_payload_tracks_offered_load() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 20.0;
        cfg.duration_ms = 200;
        let report = run_downlink(&cfg).unwrap();
        // payload carries coded bits: 2x the offered info rate plus CRC/tail
        let ratio = report.payload_mbps / (2.0 * cfg.offered_load_mbps);
        assert!((ratio - 1.0).abs() < 0.03, "ratio {ratio}");
        assert_eq!(report.info_bytes_sent, 20.0 as u64 * 1000 / 8 * 200);
    }

    #[test]
    fn zero_load_sends_only_heartbeats() {
        let cfg = base_session();
        let report = run_downlink(&cfg).unwrap();
        assert_eq!(report.payload_bytes, 0);
        assert_eq!(report.frames_sent, cfg.duration_ms as u64);
        assert_eq!(
            report.bytes_received,
            cfg.duration_ms as u64 * crate::emulator::frame::HEADER_LEN as u64
        );
    }

    #[test]
    fn cbr_rate_is_load_independent() {
        let mut cfg = base_session();
        cfg.split_mode = SplitMode::S72Cbr;
        cfg.offered_load_mbps = 0.0;
        let idle = run_downlink(&cfg).unwrap();
        cfg.offered_load_mbps = 30.0;
        let busy = run_downlink(&cfg).unwrap();
        assert_eq!(idle.bytes_received, busy.bytes_received);
        assert_eq!(
            idle.payload_bytes,
            cbr_grid_bytes_per_tti(&cfg.cell) as u64 * cfg.duration_ms as u64
        );
    }

    #[test]
    fn noiseless_uplink_decodes_clean() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 2.0;
        let report = run_uplink(&cfg).unwrap();
        assert_eq!(report.crc_failures, 0);
        assert_eq!(report.payload_mismatches, 0);
        assert!(report.decode_latency_p50_us.is_some());
        assert_eq!(report.bytes_sent, report.bytes_received);
    }

    #[test]
    fn uplink_payload_scales_with_s_bw() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 2.0;
        cfg.cell.s_bw = 5;
        let r5 = run_uplink(&cfg).unwrap();
        cfg.cell.s_bw = 8;
        cfg.seed = 42; // same traffic
        let r8 = run_uplink(&cfg).unwrap();
        assert_eq!(r5.coded_bits_sent, r8.coded_bits_sent);
        let ratio = r8.payload_bytes as f64 / r5.payload_bytes as f64;
        assert!((ratio - 8.0 / 5.0).abs() < 0.02, "ratio {ratio}");
    }

    #[test]
    fn udp_transport_carries_a_session() {
        let mut cfg = base_session();
        cfg.transport = TransportKind::Udp;
        cfg.offered_load_mbps = 5.0;
        cfg.duration_ms = 20;
        let report = run_downlink(&cfg).unwrap();
        assert!(report.frames_received > 0);
        assert!(report.bytes_received <= report.bytes_sent);
    }

    #[test]
    fn rejects_overload_and_bad_settings() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 1e9;
        assert!(matches!(run_downlink(&cfg), Err(Error::Capacity { .. })));
        let mut cfg = base_session();
        cfg.duration_ms = 0;
        assert!(run_downlink(&cfg).is_err());
        let mut cfg = base_session();
        cfg.decode_workers = 0;
        assert!(run_uplink(&cfg).is_err());
    }

    #[test]
    fn seeded_sessions_reproduce_exactly() {
        let mut cfg = base_session();
        cfg.offered_load_mbps = 3.0;
        let a = run_uplink(&cfg).unwrap();
        let b = run_uplink(&cfg).unwrap();
        assert_eq!(a.payload_bytes, b.payload_bytes);
        assert_eq!(a.coded_bits_sent, b.coded_bits_sent);
        assert_eq!(a.crc_failures, b.crc_failures);
    }

    #[test]
    fn sweep_covers_requested_points() {
        let mut cfg = base_session();
        cfg.duration_ms = 10;
        let points = sweep_load(&cfg, &[0.0, 0.1]).unwrap();
        assert_eq!(points.len(), 2);
        assert!(points[1].dl.payload_bytes > points[0].dl.payload_bytes);
        assert!(sweep_load(&cfg, &[1.5]).is_err());
    }

    #[test]
    fn bit_packing_roundtrip() {
        let bits: Vec<u8> = (0..37).map(|i| (i * 7 % 3 == 0) as u8).collect();
        assert_eq!(unpack_bits(&pack_bits(&bits), bits.len()), bits);
    }
}
