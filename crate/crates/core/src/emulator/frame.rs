//! Bit-exact fronthaul frame format.
//!
//! Fixed 16-byte header, network byte order:
//!
//! ```text
//! magic 0xF7A1 (2B) | version = 1 (1B) | flags (1B) | seq (4B) |
//! tti_id (2B) | cell_id (2B) | payload_len (2B) | meta (2B)
//! ```
//!
//! flags: bit0 direction (0 = DL, 1 = UL), bit1 split (0 = S7.3,
//! 1 = S7.2 CBR), bit2 heartbeat. meta: low nibble O_m, next nibble S_bw
//! (value 0 encodes a bitwidth of 16), upper byte reserved zero.

use crate::dimensioning::Direction;
use crate::error::{Error, Result};

pub const MAGIC: u16 = 0xF7A1;
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;
/// Jumbo-frame budget minus the header.
pub const MAX_PAYLOAD: usize = 8950;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameHeader {
    pub direction: Direction,
    /// True for S7.2 CBR mode frames.
    pub split_cbr: bool,
    pub heartbeat: bool,
    pub seq: u32,
    pub tti_id: u16,
    pub cell_id: u16,
    pub o_m: u8,
    pub s_bw: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub header: FrameHeader,
    pub payload: Vec<u8>,
}

impl Frame {
    pub fn new(header: FrameHeader, payload: Vec<u8>) -> Result<Frame> {
        if payload.len() > MAX_PAYLOAD {
            return Err(Error::Size(format!(
                "frame payload of {} bytes exceeds the {MAX_PAYLOAD} byte budget",
                payload.len()
            )));
        }
        Ok(Frame { header, payload })
    }
}

fn nibble_for_s_bw(s_bw: u8) -> Result<u8> {
    match s_bw {
        16 => Ok(0),
        1..=15 => Ok(s_bw),
        other => Err(Error::Domain(format!("soft-bit bitwidth {other} not encodable"))),
    }
}

fn s_bw_from_nibble(nibble: u8) -> u8 {
    if nibble == 0 {
        16
    } else {
        nibble
    }
}

/// Serialize a frame; header fields in network byte order.
pub fn frame_encode(frame: &Frame) -> Result<Vec<u8>> {
    if frame.payload.len() > MAX_PAYLOAD {
        return Err(Error::Size("payload exceeds the jumbo-frame budget".into()));
    }
    let h = &frame.header;
    let mut flags = 0u8;
    if h.direction == Direction::Ul {
        flags |= 1;
    }
    if h.split_cbr {
        flags |= 1 << 1;
    }
    if h.heartbeat {
        flags |= 1 << 2;
    }
    if h.o_m > 0xF {
        return Err(Error::Domain(format!("modulation order {} not encodable", h.o_m)));
    }
    let meta: u16 = (h.o_m as u16) | ((nibble_for_s_bw(h.s_bw)? as u16) << 4);
    let mut out = Vec::with_capacity(HEADER_LEN + frame.payload.len());
    out.extend_from_slice(&MAGIC.to_be_bytes());
    out.push(VERSION);
    out.push(flags);
    out.extend_from_slice(&h.seq.to_be_bytes());
    out.extend_from_slice(&h.tti_id.to_be_bytes());
    out.extend_from_slice(&h.cell_id.to_be_bytes());
    out.extend_from_slice(&(frame.payload.len() as u16).to_be_bytes());
    out.extend_from_slice(&meta.to_be_bytes());
    out.extend_from_slice(&frame.payload);
    Ok(out)
}

/// Exact inverse of `frame_encode`.
pub fn frame_decode(bytes: &[u8]) -> Result<Frame> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Framing {
            offset: bytes.len(),
            reason: format!("truncated header: {} of {HEADER_LEN} bytes", bytes.len()),
        });
    }
    let magic = u16::from_be_bytes([bytes[0], bytes[1]]);
    if magic != MAGIC {
        return Err(Error::Framing {
            offset: 0,
            reason: format!("bad magic {magic:#06x}"),
        });
    }
    if bytes[2] != VERSION {
        return Err(Error::Framing {
            offset: 2,
            reason: format!("unsupported version {}", bytes[2]),
        });
    }
    let flags = bytes[3];
    if flags & !0b111 != 0 {
        return Err(Error::Framing {
            offset: 3,
            reason: format!("reserved flag bits set: {flags:#04x}"),
        });
    }
    let seq = u32::from_be_bytes([bytes[4], bytes[5], bytes[6], bytes[7]]);
    let tti_id = u16::from_be_bytes([bytes[8], bytes[9]]);
    let cell_id = u16::from_be_bytes([bytes[10], bytes[11]]);
    let payload_len = u16::from_be_bytes([bytes[12], bytes[13]]) as usize;
    let meta = u16::from_be_bytes([bytes[14], bytes[15]]);
    if meta & 0xFF00 != 0 {
        return Err(Error::Framing {
            offset: 14,
            reason: format!("reserved meta bits set: {meta:#06x}"),
        });
    }
    if bytes.len() != HEADER_LEN + payload_len {
        return Err(Error::Framing {
            offset: 12,
            reason: format!(
                "payload length {} does not match datagram of {} bytes",
                payload_len,
                bytes.len()
            ),
        });
    }
    Ok(Frame {
        header: FrameHeader {
            direction: if flags & 1 == 1 { Direction::Ul } else { Direction::Dl },
            split_cbr: flags & (1 << 1) != 0,
            heartbeat: flags & (1 << 2) != 0,
            seq,
            tti_id,
            cell_id,
            o_m: (meta & 0xF) as u8,
            s_bw: s_bw_from_nibble(((meta >> 4) & 0xF) as u8),
        },
        payload: bytes[HEADER_LEN..].to_vec(),
    })
}
