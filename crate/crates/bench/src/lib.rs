//! Shared fixtures for the criterion benchmarks.

use fronthaul_core::phy::{self, CodeBlock, TransportBlock};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A seeded transport block split into `n_blocks` code blocks of
/// `block_bits` info bits each.
pub fn coded_blocks(n_blocks: usize, block_bits: usize, seed: u64) -> Vec<CodeBlock> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // payload sized so that payload + 16-bit CRC fills n_blocks blocks
    let payload_bytes = (n_blocks * block_bits - 16) / 8;
    let payload: Vec<u8> = (0..payload_bytes).map(|_| rng.gen()).collect();
    let tb = TransportBlock::new(payload, 0);
    let blocks = phy::encode(&tb, block_bits).unwrap();
    assert_eq!(blocks.len(), n_blocks);
    blocks
}

/// Hard-decision LLRs for a code block (strong, noiseless).
pub fn hard_llrs(block: &CodeBlock) -> Vec<f32> {
    block
        .coded_bits
        .iter()
        .map(|&b| if b == 0 { 4.0 } else { -4.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        let blocks = coded_blocks(16, 2048, 1);
        assert_eq!(blocks.len(), 16);
        for b in &blocks {
            assert_eq!(hard_llrs(b).len(), b.coded_bits.len());
        }
    }
}
