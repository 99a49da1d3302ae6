//! Transport blocks, code-block segmentation, and soft-decision decoding.
//!
//! A transport block is CRC-protected payload; its bits (payload + 16-bit
//! CRC) are split into near-equal code blocks of at most `max_codeblock_bits`
//! info bits, each independently convolutionally encoded. Decoding reverses
//! the pipeline, reassembles the segments in index order, and verifies the
//! CRC; a CRC failure is flagged but the payload is still returned.

use super::conv;
use super::crc::crc16;
use super::quantizer::SoftBitBlock;
use crate::error::{Error, Result};

/// Largest accepted transport block payload.
pub const MAX_TRANSPORT_BLOCK_BYTES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportBlock {
    pub payload: Vec<u8>,
    pub crc: u16,
    pub block_id: u32,
}

impl TransportBlock {
    pub fn new(payload: Vec<u8>, block_id: u32) -> TransportBlock {
        let crc = crc16(&payload);
        TransportBlock { payload, crc, block_id }
    }

    pub fn crc_ok(&self) -> bool {
        crc16(&self.payload) == self.crc
    }
}

/// One independently coded segment of a transport block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBlock {
    pub coded_bits: Vec<u8>,
    pub parent_block_id: u32,
    pub index: u32,
}

fn bytes_to_bits(bytes: &[u8]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(bytes.len() * 8);
    for &b in bytes {
        for j in (0..8).rev() {
            bits.push((b >> j) & 1);
        }
    }
    bits
}

fn bits_to_bytes(bits: &[u8]) -> Vec<u8> {
    debug_assert_eq!(bits.len() % 8, 0);
    bits.chunks(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | b))
        .collect()
}

/// Segment sizes for `total` info bits into blocks of at most `max` bits,
/// balanced to within one bit.
fn segment_sizes(total: usize, max: usize) -> Vec<usize> {
    let n = total.div_ceil(max);
    let base = total / n;
    let rem = total % n;
    (0..n).map(|i| base + usize::from(i < rem)).collect()
}

/// CRC-append, segment, and convolutionally encode a transport block.
pub fn encode(tb: &TransportBlock, max_codeblock_bits: usize) -> Result<Vec<CodeBlock>> {
    if tb.payload.is_empty() {
        return Err(Error::Size("empty transport block payload".into()));
    }
    if tb.payload.len() > MAX_TRANSPORT_BLOCK_BYTES {
        return Err(Error::Size(format!(
            "transport block of {} bytes exceeds the {} byte limit",
            tb.payload.len(),
            MAX_TRANSPORT_BLOCK_BYTES
        )));
    }
    if max_codeblock_bits < 8 {
        return Err(Error::Domain("code blocks must hold at least 8 info bits".into()));
    }
    let mut bits = bytes_to_bits(&tb.payload);
    for j in (0..16).rev() {
        bits.push(((tb.crc >> j) & 1) as u8);
    }
    let mut blocks = Vec::new();
    let mut offset = 0usize;
    for (index, size) in segment_sizes(bits.len(), max_codeblock_bits).into_iter().enumerate() {
        let chunk = &bits[offset..offset + size];
        blocks.push(CodeBlock {
            coded_bits: conv::encode_bits(chunk),
            parent_block_id: tb.block_id,
            index: index as u32,
        });
        offset += size;
    }
    Ok(blocks)
}

/// Decoded transport block plus CRC verdict.
#[derive(Debug, Clone)]
pub struct Decoded {
    pub block: TransportBlock,
    pub crc_ok: bool,
}

/// Decode per-code-block LLR sequences (in segment order) back into a
/// transport block.
pub fn decode_llrs(block_llrs: &[Vec<f32>], block_id: u32) -> Result<Decoded> {
    let mut info_bits = Vec::new();
    for llrs in block_llrs {
        info_bits.extend(conv::viterbi_decode(llrs)?);
    }
    reassemble(info_bits, block_id)
}

/// Decode quantized soft-bit blocks.
pub fn decode_soft(blocks: &[SoftBitBlock], block_id: u32) -> Result<Decoded> {
    let llrs: Vec<Vec<f32>> = blocks.iter().map(|b| b.dequantize()).collect();
    decode_llrs(&llrs, block_id)
}

pub(crate) fn reassemble(info_bits: Vec<u8>, block_id: u32) -> Result<Decoded> {
    if info_bits.len() < 24 || (info_bits.len() - 16) % 8 != 0 {
        return Err(Error::Framing {
            offset: info_bits.len(),
            reason: "decoded bit count does not frame a payload plus 16-bit CRC".into(),
        });
    }
    let payload_bits = info_bits.len() - 16;
    let payload = bits_to_bytes(&info_bits[..payload_bits]);
    let rx_crc = info_bits[payload_bits..]
        .iter()
        .fold(0u16, |acc, &b| (acc << 1) | b as u16);
    let crc_ok = crc16(&payload) == rx_crc;
    Ok(Decoded {
        block: TransportBlock {
            payload,
            crc: rx_crc,
            block_id,
        },
        crc_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phy::quantizer::quantize_llr;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn hard_llrs(bits: &[u8]) -> Vec<f32> {
        bits.iter().map(|&b| if b == 0 { 4.0 } else { -4.0 }).collect()
    }

    #[test]
    fn segmentation_counts() {
        // 1000-byte payload + 16-bit CRC at 2048-bit blocks -> ceil(8016/2048) = 4
        let tb = TransportBlock::new(vec![0xA5; 1000], 1);
        let blocks = encode(&tb, 2048).unwrap();
        assert_eq!(blocks.len(), 4);
        for (i, b) in blocks.iter().enumerate() {
            assert_eq!(b.index, i as u32);
            assert_eq!(b.parent_block_id, 1);
            let info = b.coded_bits.len() / 2 - 6;
            assert_eq!(b.coded_bits.len(), 2 * (info + 6));
            assert!(info <= 2048);
        }
        let total: usize = blocks.iter().map(|b| b.coded_bits.len() / 2 - 6).sum();
        assert_eq!(total, 8016);
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(encode(&TransportBlock::new(vec![], 0), 2048).is_err());
        let huge = TransportBlock {
            payload: vec![0; MAX_TRANSPORT_BLOCK_BYTES + 1],
            crc: 0,
            block_id: 0,
        };
        assert!(encode(&huge, 2048).is_err());
    }

    #[test]
    fn all_zero_payload_encodes_to_zero_bits() {
        let tb = TransportBlock {
            payload: vec![0u8; 64],
            crc: 0, // forced zero so the tail stays in the zero state
            block_id: 0,
        };
        let blocks = encode(&tb, 4096).unwrap();
        for b in &blocks {
            assert!(b.coded_bits.iter().all(|&bit| bit == 0));
        }
    }

    #[test]
    fn noiseless_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let payload: Vec<u8> = (0..300).map(|_| rng.gen()).collect();
        let tb = TransportBlock::new(payload, 17);
        let blocks = encode(&tb, 1024).unwrap();
        let llrs: Vec<Vec<f32>> = blocks.iter().map(|b| hard_llrs(&b.coded_bits)).collect();
        let out = decode_llrs(&llrs, 17).unwrap();
        assert!(out.crc_ok);
        assert_eq!(out.block, tb);
    }

    #[test]
    fn quantized_roundtrip_at_s_bw_8() {
        let tb = TransportBlock::new((0u8..=255).collect(), 5);
        let blocks = encode(&tb, 600).unwrap();
        let soft: Vec<_> = blocks
            .iter()
            .map(|b| quantize_llr(&hard_llrs(&b.coded_bits), 8, 16.0).unwrap())
            .collect();
        let out = decode_soft(&soft, 5).unwrap();
        assert!(out.crc_ok);
        assert_eq!(out.block.payload, tb.payload);
    }

    #[test]
    fn total_erasure_fails_crc() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let mut failures = 0;
        let trials = 1000;
        for _ in 0..trials {
            let payload: Vec<u8> = (0..16).map(|_| rng.gen()).collect();
            let tb = TransportBlock::new(payload, 0);
            let blocks = encode(&tb, 4096).unwrap();
            let erased: Vec<Vec<f32>> =
                blocks.iter().map(|b| vec![0.0f32; b.coded_bits.len()]).collect();
            let out = decode_llrs(&erased, 0).unwrap();
            if !out.crc_ok {
                failures += 1;
            }
        }
        // erasure leaves the decoder guessing; CRC must catch essentially all
        assert!(failures >= trials * 99 / 100, "only {failures}/{trials} flagged");
    }

    #[test]
    fn length_mismatch_is_a_framing_error() {
        assert!(decode_llrs(&[vec![0.0f32; 30]], 0).is_err());
        assert!(decode_llrs(&[vec![0.0f32; 45]], 0).is_err());
    }
}
